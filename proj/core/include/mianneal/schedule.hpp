#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mianneal {

enum class ScheduleMode { kGeometric, kInverseMcs, kConstant };

std::string_view to_string(ScheduleMode mode) noexcept;
// Accepts "geometric", "inverse-mcs", "constant"; throws std::invalid_argument.
ScheduleMode parse_schedule_mode(std::string_view text);

// A quantity (temperature or transverse field) as a function of the 1-based
// MCS index m in [1, total_mcs]:
//   geometric    initial * floor^((m-1)/(total-1))
//   inverse-mcs  max(initial / m, initial * floor)
//   constant     initial
struct Schedule {
  ScheduleMode mode = ScheduleMode::kConstant;
  double initial = 1.0;
  double floor_factor = 1e-6;
  std::uint64_t total_mcs = 1;

  void validate() const;
  double value_at(std::uint64_t m) const;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// scale * j_perp(trotter, T(m), gamma(m)). A zero scale decouples the layers.
double effective_jperp_at(std::size_t trotter, const Schedule& temperature, const Schedule& gamma,
                          double scale, std::uint64_t m);

}  // namespace mianneal
