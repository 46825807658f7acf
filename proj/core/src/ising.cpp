#include "mianneal/ising.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mianneal {

namespace {

void require_size(const ProblemGraph& graph, const SpinConfiguration& s) {
  if (s.size() != graph.n_nodes())
    throw std::invalid_argument("spin configuration has " + std::to_string(s.size()) +
                                " entries, graph has " + std::to_string(graph.n_nodes()) + " nodes");
}

void require_site(std::size_t site, std::size_t n) {
  if (site >= n) throw std::out_of_range("site " + std::to_string(site) + " out of range");
}

}  // namespace

SpinConfiguration::SpinConfiguration(std::size_t n, Spin value) : spins_(n, value) {
  if (value != 1 && value != -1) throw std::invalid_argument("spin must be +1 or -1");
}

SpinConfiguration::SpinConfiguration(std::vector<Spin> spins) : spins_(std::move(spins)) {
  for (auto s : spins_)
    if (s != 1 && s != -1) throw std::invalid_argument("spin must be +1 or -1");
}

SpinConfiguration SpinConfiguration::random(std::size_t n, const StreamRng& rng,
                                            std::uint32_t stream) {
  SpinConfiguration out;
  out.spins_.resize(n);
  // 128 spins per Philox block.
  for (std::size_t base = 0; base < n; base += 128) {
    const auto block = rng.block(StreamPurpose::kInit, stream, base / 128);
    for (std::size_t i = base; i < std::min(n, base + 128); ++i) {
      const std::size_t bit = i - base;
      out.spins_[i] = ((block[bit / 32] >> (bit % 32)) & 1u) ? Spin{1} : Spin{-1};
    }
  }
  return out;
}

SpinConfiguration SpinConfiguration::flipped_all() const {
  SpinConfiguration out = *this;
  for (auto& s : out.spins_) s = static_cast<Spin>(-s);
  return out;
}

Energy layer_energy(const ProblemGraph& graph, const SpinConfiguration& s) {
  require_size(graph, s);
  Energy e = 0;
  for (const auto& edge : graph.edges()) e += Energy{edge.w} * s[edge.u] * s[edge.v];
  return e;
}

Energy cut_value(const ProblemGraph& graph, const SpinConfiguration& s) {
  require_size(graph, s);
  Energy cut = 0;
  for (const auto& edge : graph.edges())
    if (s[edge.u] != s[edge.v]) cut += edge.w;
  return cut;
}

Energy cut_from_energy(const ProblemGraph& graph, Energy energy) noexcept {
  return (graph.total_weight() - energy) / 2;
}

Energy delta_problem(const ProblemGraph& graph, const SpinConfiguration& s, NodeIndex site) {
  require_size(graph, s);
  require_site(site, s.size());
  Energy field = 0;
  for (const auto& nb : graph.neighbors(site)) field += Energy{nb.w} * s[nb.node];
  return -2 * s[site] * field;
}

double j_perp(std::size_t trotter, double temperature, double gamma) {
  if (trotter < 1) throw std::domain_error("trotter number must be >= 1");
  if (!(temperature > 0.0)) throw std::domain_error("temperature must be positive");
  if (!(gamma > 0.0)) throw std::domain_error("transverse field must be positive");
  const double pt = static_cast<double>(trotter) * temperature;
  const double x = gamma / pt;
  // -ln tanh(x) = ln(1 + q) - ln(1 - q) with q = e^{-2x}. ln(1 - q) goes
  // through expm1 when q is near 1 (small x) and log1p otherwise.
  const double q = std::exp(-2.0 * x);
  const double log_one_minus_q = q < 0.5 ? std::log1p(-q) : std::log(-std::expm1(-2.0 * x));
  return 0.5 * pt * (std::log1p(q) - log_one_minus_q);
}

double interlayer_delta_mi(const SpinConfiguration& s, const SpinConfiguration& snapshot,
                           NodeIndex site, double jp) {
  if (s.size() != snapshot.size()) throw std::invalid_argument("snapshot size mismatch");
  require_site(site, s.size());
  return 2.0 * jp * s[site] * snapshot[site];
}

double interlayer_delta_sqa(std::span<const SpinConfiguration> layers, std::size_t k,
                            NodeIndex site, double jp) {
  const std::size_t p = layers.size();
  if (p < 2) throw std::invalid_argument("trotter coupling needs at least two layers");
  if (k >= p) throw std::out_of_range("layer index out of range");
  require_site(site, layers[k].size());
  const auto& prev = layers[(k + p - 1) % p];
  const auto& next = layers[(k + 1) % p];
  if (prev.size() != layers[k].size() || next.size() != layers[k].size())
    throw std::invalid_argument("layer size mismatch");
  return 2.0 * jp * layers[k][site] * (prev[site] + next[site]);
}

}  // namespace mianneal
