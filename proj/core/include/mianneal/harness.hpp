#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mianneal/anneal.hpp"
#include "mianneal/graph.hpp"

namespace mianneal {

// Runs n_trials seeded base_seed + i; up to `trial_workers` trials execute
// concurrently. Results are ordered by trial index.
std::vector<TrialResult> run_trials(const ProblemGraph& graph, const AnnealRunConfig& config,
                                    std::size_t n_trials, std::uint64_t base_seed,
                                    std::size_t trial_workers = 1);

struct SummaryStats {
  std::string graph;
  Algorithm algorithm = Algorithm::kMi;
  std::size_t trials = 0;
  double average_best_cut = 0.0;
  Energy best_cut = 0;
  std::optional<Energy> bkc;
  // Trials with best_cut >= bkc; empty when the BKC is unknown.
  std::optional<std::size_t> times_reaching_bkc;
  // Set when some trial beat the registry value.
  bool bkc_exceeded = false;
  std::vector<Energy> per_trial_best;
  std::vector<std::uint64_t> per_trial_mcs_to_best;
  double mean_mcs_to_best = 0.0;
};

SummaryStats summarize(const std::vector<TrialResult>& results, std::optional<Energy> bkc,
                       std::string graph = {}, Algorithm algorithm = Algorithm::kMi);

struct PairedRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  Energy cut_a = 0;
  Energy cut_b = 0;
  Energy delta() const noexcept { return cut_a - cut_b; }
};

struct PairedReport {
  std::string graph;
  AnnealRunConfig config_a;
  AnnealRunConfig config_b;
  std::vector<PairedRow> rows;
  double mean_a = 0.0;
  double mean_b = 0.0;
  double mean_difference = 0.0;  // mean of cut_a - cut_b
  std::size_t wins = 0;          // a > b
  std::size_t losses = 0;
  std::size_t ties = 0;
};

// Seed-matched trials of two configurations that share the MCS budget.
PairedReport compare_paired(const ProblemGraph& graph, const AnnealRunConfig& config_a,
                            const AnnealRunConfig& config_b, std::size_t n_trials,
                            std::uint64_t base_seed, std::size_t trial_workers = 1);

// Rows of the two published parameter tables.
struct Preset {
  std::string name;   // e.g. "g9-case1"
  std::string graph;  // e.g. "G9"
  int experiment_case = 1;
  std::size_t trotter = 150;
  double initial_temperature = 0.0;
  std::size_t trials = 50;
  std::uint64_t mcs = 500000;

  // case 1: T and gamma both geometric to 1e-6 of their initial values.
  // case 2: constant T, gamma = gamma0 / m floored at 1e-6 * gamma0.
  AnnealRunConfig to_config(Algorithm algorithm = Algorithm::kMi, double gamma0 = 1.0) const;
};

const std::vector<Preset>& builtin_presets();
std::optional<Preset> find_preset(std::string_view name);

// Structured summary: every SummaryStats field, per-trial seeds and the full
// config echo. Byte-stable for identical inputs (no timings).
void write_summary_json(std::ostream& out, const SummaryStats& stats,
                        const AnnealRunConfig& config, std::uint64_t base_seed);
void write_paired_json(std::ostream& out, const PairedReport& report, std::uint64_t base_seed);

// Config echo recovered from a summary file, for exact re-runs.
struct SummaryReplay {
  AnnealRunConfig config;
  std::uint64_t base_seed = 0;
  std::size_t trials = 0;
  std::vector<Energy> per_trial_best;
};
SummaryReplay read_summary_json(std::istream& in);

}  // namespace mianneal
