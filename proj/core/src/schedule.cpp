#include "mianneal/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mianneal/ising.hpp"

namespace mianneal {

std::string_view to_string(ScheduleMode mode) noexcept {
  switch (mode) {
    case ScheduleMode::kGeometric: return "geometric";
    case ScheduleMode::kInverseMcs: return "inverse-mcs";
    case ScheduleMode::kConstant: return "constant";
  }
  return "?";
}

ScheduleMode parse_schedule_mode(std::string_view text) {
  if (text == "geometric") return ScheduleMode::kGeometric;
  if (text == "inverse-mcs") return ScheduleMode::kInverseMcs;
  if (text == "constant") return ScheduleMode::kConstant;
  throw std::invalid_argument("unknown schedule mode '" + std::string(text) + "'");
}

void Schedule::validate() const {
  if (!(initial > 0.0) || !std::isfinite(initial))
    throw std::invalid_argument("schedule initial value must be positive");
  if (!(floor_factor > 0.0) || floor_factor > 1.0)
    throw std::invalid_argument("schedule floor factor must be in (0, 1]");
  if (total_mcs < 1) throw std::invalid_argument("schedule total_mcs must be >= 1");
}

double Schedule::value_at(std::uint64_t m) const {
  if (m < 1 || m > total_mcs)
    throw std::out_of_range("MCS index " + std::to_string(m) + " outside [1, " +
                            std::to_string(total_mcs) + "]");
  switch (mode) {
    case ScheduleMode::kGeometric: {
      if (m == 1 || total_mcs == 1) return initial;
      if (m == total_mcs) return initial * floor_factor;
      const double frac = static_cast<double>(m - 1) / static_cast<double>(total_mcs - 1);
      return initial * std::pow(floor_factor, frac);
    }
    case ScheduleMode::kInverseMcs:
      return std::max(initial / static_cast<double>(m), initial * floor_factor);
    case ScheduleMode::kConstant:
      return initial;
  }
  return initial;
}

double effective_jperp_at(std::size_t trotter, const Schedule& temperature, const Schedule& gamma,
                          double scale, std::uint64_t m) {
  if (temperature.total_mcs != gamma.total_mcs)
    throw std::invalid_argument("temperature and gamma schedules must share total_mcs");
  if (!(scale >= 0.0)) throw std::domain_error("J-perp scale must be non-negative");
  const double jp = j_perp(trotter, temperature.value_at(m), gamma.value_at(m));
  return scale * jp;
}

}  // namespace mianneal
