#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "mianneal/graph.hpp"

namespace mianneal {

struct TraceRow {
  std::uint64_t mcs = 0;
  double temperature = 0.0;
  double gamma = 0.0;
  double jperp_eff = 0.0;
  Energy best_cut = 0;
  Energy min_energy = 0;
  std::uint64_t layers_at_min = 0;
  std::uint64_t retarget_count = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

// Sampled every `stride` MCS and at the final MCS.
struct ConvergenceTrace {
  std::uint64_t stride = 1;
  std::vector<TraceRow> rows;

  friend bool operator==(const ConvergenceTrace&, const ConvergenceTrace&) = default;
};

inline constexpr std::string_view kTraceHeader =
    "mcs,temperature,gamma,jperp_eff,best_cut,min_energy,layers_at_min,retarget_count";

// Doubles are written in shortest round-trip form.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);
// Stride is recovered from the first sampled MCS. Throws GraphParseError
// (line-numbered) on malformed input.
ConvergenceTrace read_trace_csv(std::istream& in);

}  // namespace mianneal
