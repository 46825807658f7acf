#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mianneal/graph.hpp"
#include "mianneal/rng.hpp"

namespace mianneal {

using Spin = std::int8_t;

// Classical spins s_i in {-1, +1} for one layer.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::size_t n, Spin value = 1);
  // Throws std::invalid_argument if any entry is not +-1.
  explicit SpinConfiguration(std::vector<Spin> spins);

  // Independent uniform +-1 spins from the init substream of (seed, stream).
  static SpinConfiguration random(std::size_t n, const StreamRng& rng, std::uint32_t stream);

  std::size_t size() const noexcept { return spins_.size(); }
  Spin operator[](std::size_t i) const { return spins_[i]; }
  void flip(std::size_t i) { spins_[i] = static_cast<Spin>(-spins_[i]); }
  std::span<const Spin> view() const noexcept { return spins_; }
  SpinConfiguration flipped_all() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::vector<Spin> spins_;
};

// Problem energy sum_{(u,v,w)} w * s_u * s_v. Minimizing it maximizes the cut.
Energy layer_energy(const ProblemGraph& graph, const SpinConfiguration& s);

// Total weight of edges crossing the partition; equals (W - E) / 2.
Energy cut_value(const ProblemGraph& graph, const SpinConfiguration& s);
Energy cut_from_energy(const ProblemGraph& graph, Energy energy) noexcept;

// E(s with `site` flipped) - E(s).
Energy delta_problem(const ProblemGraph& graph, const SpinConfiguration& s, NodeIndex site);

// Transverse coupling -(P T / 2) ln tanh(gamma / (P T)); positive for all
// valid inputs. Throws std::domain_error on non-positive arguments.
double j_perp(std::size_t trotter, double temperature, double gamma);

// Change of -jp * sum_i s_i m_i when s[site] flips (m is the frozen target).
double interlayer_delta_mi(const SpinConfiguration& s, const SpinConfiguration& snapshot,
                           NodeIndex site, double jp);

// Change of -jp * sum_k sum_i s_i^k s_i^{k+1} (periodic in k) when
// layers[k][site] flips.
double interlayer_delta_sqa(std::span<const SpinConfiguration> layers, std::size_t k,
                            NodeIndex site, double jp);

}  // namespace mianneal
