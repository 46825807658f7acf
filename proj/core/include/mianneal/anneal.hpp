#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "mianneal/graph.hpp"
#include "mianneal/ising.hpp"
#include "mianneal/rng.hpp"
#include "mianneal/schedule.hpp"
#include "mianneal/trace.hpp"

namespace mianneal {

enum class Algorithm { kSa, kSqa, kMi };

std::string_view to_string(Algorithm algo) noexcept;
// Accepts "sa", "sqa", "mi"; throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view text);

// Flip attempts per MCS for classical SA: one, or one per trotter layer so the
// total attempt budget matches the layered solvers.
enum class SaAttempts { kOne, kPerLayer };

std::string_view to_string(SaAttempts mode) noexcept;
// Accepts "one" and "P".
SaAttempts parse_sa_attempts(std::string_view text);

struct AnnealRunConfig {
  Algorithm algorithm = Algorithm::kMi;
  std::size_t trotter = 150;
  Schedule temperature;
  Schedule gamma;
  double jperp_scale = 1.0;
  std::uint64_t mcs_limit = 1;
  std::uint64_t seed = 0;
  SaAttempts sa_attempts = SaAttempts::kOne;
  // Concurrent layer workers inside one MI run; 1 is the deterministic mode.
  std::size_t worker_count = 1;
  // Trace sampling stride; 0 selects max(1, mcs_limit / 1000).
  std::uint64_t trace_stride = 0;

  // Sets both schedules' total_mcs to the MCS budget.
  void set_mcs_limit(std::uint64_t mcs);
  std::uint64_t effective_stride() const noexcept;
  // Throws std::invalid_argument on any violated invariant.
  void validate() const;

  friend bool operator==(const AnnealRunConfig&, const AnnealRunConfig&) = default;
};

struct TrialResult {
  Energy best_cut = 0;
  SpinConfiguration best_spins;
  ConvergenceTrace trace;
  // Last MCS at which the best cut improved (0: initial state).
  std::uint64_t mcs_to_best = 0;
  double wall_time_s = 0.0;
};

// Accept iff delta <= 0 or u < exp(-delta / T).
inline bool metropolis_accept(double delta, double temperature, double u) {
  if (!(temperature > 0.0)) throw std::domain_error("temperature must be positive");
  if (delta <= 0.0) return true;
  const double x = delta / temperature;
  // exp(-37) < 2^-53, the smallest non-zero u, so only u == 0 can pass.
  if (x > 37.0) return u == 0.0 && std::exp(-x) > 0.0;
  return u < std::exp(-x);
}

// P layers with incrementally maintained problem energies and the tracked
// minimum-energy snapshot. Local fields h_i = sum_j w_ij s_j are cached per
// layer so a flip attempt is O(1) and an accepted flip O(degree).
class TrotterEnsemble {
 public:
  // Layer k starts from the init substream `k` of `rng`.
  TrotterEnsemble(const ProblemGraph& graph, std::size_t trotter, const StreamRng& rng,
                  std::uint32_t first_stream = 0);
  TrotterEnsemble(const ProblemGraph& graph, std::vector<SpinConfiguration> layers);

  std::size_t trotter() const noexcept { return layers_.size(); }
  const ProblemGraph& graph() const noexcept { return *graph_; }
  const SpinConfiguration& layer(std::size_t k) const { return layers_[k]; }
  std::span<const SpinConfiguration> layers() const noexcept { return layers_; }
  Energy layer_energy(std::size_t k) const { return energies_[k]; }
  const std::vector<Energy>& layer_energies() const noexcept { return energies_; }

  std::size_t min_index() const noexcept { return min_index_; }
  Energy min_energy() const noexcept { return min_energy_; }
  const SpinConfiguration& min_snapshot() const noexcept { return min_snapshot_; }
  std::uint64_t retarget_count() const noexcept { return retarget_count_; }

  Energy delta(std::size_t k, NodeIndex site) const {
    return -2 * layers_[k][site] * fields_[k][site];
  }
  void flip(std::size_t k, NodeIndex site);

  // Copies layer k into the snapshot iff its energy is strictly below the
  // current minimum. Returns whether a retarget happened.
  bool retarget_if_better(std::size_t k);
  // Installs an externally chosen target (used by concurrent workers).
  void set_target(std::size_t k, Energy energy, SpinConfiguration snapshot,
                  std::uint64_t retargets);

  // True iff every cached energy and field matches full recomputation.
  bool audit() const;

 private:
  void init_fields();

  const ProblemGraph* graph_;
  std::vector<SpinConfiguration> layers_;
  std::vector<std::vector<Energy>> fields_;
  std::vector<Energy> energies_;
  std::size_t min_index_ = 0;
  Energy min_energy_ = 0;
  SpinConfiguration min_snapshot_;
  std::uint64_t retarget_count_ = 0;
};

// Number of layers whose problem energy equals the tracked minimum.
std::size_t layers_at_min(const TrotterEnsemble& ensemble);

// Per-MCS hook: (mcs, ensemble after the MCS). Used by diagnostics and tests.
using McsObserver = std::function<void(std::uint64_t, const TrotterEnsemble&)>;

// Classical single-spin-flip SA on one chain. `stream` selects the random
// substream; layer k of sqa_run/mi_run uses stream k.
TrialResult sa_run(const ProblemGraph& graph, const AnnealRunConfig& config,
                   std::uint32_t stream = 0, const McsObserver& observer = {});

// Path-integral SQA: periodic trotter coupling between neighbouring layers.
TrialResult sqa_run(const ProblemGraph& graph, const AnnealRunConfig& config,
                    const McsObserver& observer = {});

// Min-imitation annealing: each layer couples to a frozen copy of the
// lowest-energy layer, retargeted on strict improvement. With
// worker_count > 1 layers are split across threads sharing the target.
TrialResult mi_run(const ProblemGraph& graph, const AnnealRunConfig& config,
                   const McsObserver& observer = {});

// Dispatches on config.algorithm.
TrialResult anneal(const ProblemGraph& graph, const AnnealRunConfig& config);

}  // namespace mianneal
