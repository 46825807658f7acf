#include "mianneal/trace.hpp"

#include <array>
#include <charconv>
#include <string>

namespace mianneal {

namespace {

void put_double(std::ostream& out, double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.write(buf.data(), end - buf.data());
}

template <class T>
T get_number(std::string_view field, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw GraphParseError(line, "bad trace field '" + std::string(field) + "'");
  return value;
}

}  // namespace

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.rows) {
    out << r.mcs << ',';
    put_double(out, r.temperature);
    out << ',';
    put_double(out, r.gamma);
    out << ',';
    put_double(out, r.jperp_eff);
    out << ',' << r.best_cut << ',' << r.min_energy << ',' << r.layers_at_min << ','
        << r.retarget_count << '\n';
  }
}

ConvergenceTrace read_trace_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTraceHeader)
    throw GraphParseError(line_no, "missing trace header");
  ConvergenceTrace trace;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::array<std::string_view, 8> f{};
    std::size_t start = 0, count = 0;
    const std::string_view sv(line);
    for (std::size_t i = 0; i <= sv.size(); ++i) {
      if (i == sv.size() || sv[i] == ',') {
        if (count == f.size()) throw GraphParseError(line_no, "too many trace fields");
        f[count++] = sv.substr(start, i - start);
        start = i + 1;
      }
    }
    if (count != f.size()) throw GraphParseError(line_no, "expected 8 trace fields");
    trace.rows.push_back({get_number<std::uint64_t>(f[0], line_no),
                          get_number<double>(f[1], line_no),
                          get_number<double>(f[2], line_no),
                          get_number<double>(f[3], line_no),
                          get_number<Energy>(f[4], line_no),
                          get_number<Energy>(f[5], line_no),
                          get_number<std::uint64_t>(f[6], line_no),
                          get_number<std::uint64_t>(f[7], line_no)});
  }
  if (!trace.rows.empty()) trace.stride = trace.rows.front().mcs;
  return trace;
}

}  // namespace mianneal
