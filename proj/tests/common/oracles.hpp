#pragma once

// Reference implementations used only by tests. They deliberately avoid the
// library's cached fields and incremental paths.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mianneal/graph.hpp"
#include "mianneal/ising.hpp"

namespace mianneal::testing {

// Max cut by enumerating all 2^(n-1) partitions (node 0 pinned).
inline Energy brute_force_max_cut(const ProblemGraph& g) {
  const std::size_t n = g.n_nodes();
  Energy best = std::numeric_limits<Energy>::min();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    Energy cut = 0;
    for (const auto& e : g.edges()) {
      const bool su = e.u == 0 ? false : ((mask >> (e.u - 1)) & 1);
      const bool sv = e.v == 0 ? false : ((mask >> (e.v - 1)) & 1);
      if (su != sv) cut += e.w;
    }
    best = std::max(best, cut);
  }
  return best;
}

// Sum over edges via an explicit n x n coupling matrix.
inline Energy energy_by_matrix(const ProblemGraph& g, const SpinConfiguration& s) {
  const std::size_t n = g.n_nodes();
  std::vector<Energy> j(n * n, 0);
  for (const auto& e : g.edges()) j[e.u * n + e.v] = e.w;
  Energy total = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) total += j[u * n + v] * s[u] * s[v];
  return total;
}

inline double mi_interlayer_energy(const SpinConfiguration& s, const SpinConfiguration& m, double jp) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += s[i] * m[i];
  return -jp * sum;
}

inline double sqa_interlayer_energy(std::span<const SpinConfiguration> layers, double jp) {
  const std::size_t p = layers.size();
  double sum = 0.0;
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t i = 0; i < layers[k].size(); ++i) sum += layers[k][i] * layers[(k + 1) % p][i];
  return -jp * sum;
}

inline SpinConfiguration with_flip(SpinConfiguration s, std::size_t site) {
  s.flip(site);
  return s;
}

// GSET instance directory: $MIANNEAL_GSET_DIR, else <source>/data/gset.
inline std::optional<std::filesystem::path> gset_file(const std::string& name) {
  std::filesystem::path dir = MIANNEAL_SOURCE_DIR "/data/gset";
  if (const char* env = std::getenv("MIANNEAL_GSET_DIR")) dir = env;
  for (const char* ext : {"", ".txt", ".gset"}) {
    auto p = dir / (name + ext);
    if (std::filesystem::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

}  // namespace mianneal::testing
