#include "mianneal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace mianneal {

using nlohmann::json;

std::vector<TrialResult> run_trials(const ProblemGraph& graph, const AnnealRunConfig& config,
                                    std::size_t n_trials, std::uint64_t base_seed,
                                    std::size_t trial_workers) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  config.validate();
  std::vector<TrialResult> results(n_trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < n_trials; i = next++) {
      try {
        AnnealRunConfig trial = config;
        trial.seed = base_seed + i;
        results[i] = anneal(graph, trial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(trial_workers, 1, n_trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

SummaryStats summarize(const std::vector<TrialResult>& results, std::optional<Energy> bkc,
                       std::string graph, Algorithm algorithm) {
  if (results.empty()) throw std::invalid_argument("cannot summarize zero trials");
  SummaryStats s;
  s.graph = std::move(graph);
  s.algorithm = algorithm;
  s.trials = results.size();
  s.bkc = bkc;
  Energy sum = 0;
  std::uint64_t mcs_sum = 0;
  s.best_cut = results.front().best_cut;
  std::size_t reached = 0;
  for (const auto& r : results) {
    s.per_trial_best.push_back(r.best_cut);
    s.per_trial_mcs_to_best.push_back(r.mcs_to_best);
    sum += r.best_cut;
    mcs_sum += r.mcs_to_best;
    s.best_cut = std::max(s.best_cut, r.best_cut);
    if (bkc && r.best_cut >= *bkc) ++reached;
    if (bkc && r.best_cut > *bkc) s.bkc_exceeded = true;
  }
  // Integer sums keep the mean independent of trial order.
  s.average_best_cut = static_cast<double>(sum) / static_cast<double>(s.trials);
  s.mean_mcs_to_best = static_cast<double>(mcs_sum) / static_cast<double>(s.trials);
  if (bkc) s.times_reaching_bkc = reached;
  return s;
}

PairedReport compare_paired(const ProblemGraph& graph, const AnnealRunConfig& config_a,
                            const AnnealRunConfig& config_b, std::size_t n_trials,
                            std::uint64_t base_seed, std::size_t trial_workers) {
  if (config_a.mcs_limit != config_b.mcs_limit)
    throw std::invalid_argument("paired configs must share the MCS budget");
  const auto a = run_trials(graph, config_a, n_trials, base_seed, trial_workers);
  const auto b = run_trials(graph, config_b, n_trials, base_seed, trial_workers);

  PairedReport report;
  report.graph = graph.name();
  report.config_a = config_a;
  report.config_b = config_b;
  Energy sum_a = 0, sum_b = 0;
  for (std::size_t i = 0; i < n_trials; ++i) {
    PairedRow row{i, base_seed + i, a[i].best_cut, b[i].best_cut};
    sum_a += row.cut_a;
    sum_b += row.cut_b;
    if (row.delta() > 0) ++report.wins;
    else if (row.delta() < 0) ++report.losses;
    else ++report.ties;
    report.rows.push_back(row);
  }
  const auto n = static_cast<double>(n_trials);
  report.mean_a = static_cast<double>(sum_a) / n;
  report.mean_b = static_cast<double>(sum_b) / n;
  report.mean_difference = static_cast<double>(sum_a - sum_b) / n;
  return report;
}

// ---------------------------------------------------------------------------

AnnealRunConfig Preset::to_config(Algorithm algorithm, double gamma0) const {
  AnnealRunConfig c;
  c.algorithm = algorithm;
  c.trotter = trotter;
  c.jperp_scale = 1.0;
  if (experiment_case == 1) {
    c.temperature = {ScheduleMode::kGeometric, initial_temperature, 1e-6, mcs};
    c.gamma = {ScheduleMode::kGeometric, gamma0, 1e-6, mcs};
  } else {
    c.temperature = {ScheduleMode::kConstant, initial_temperature, 1e-6, mcs};
    c.gamma = {ScheduleMode::kInverseMcs, gamma0, 1e-6, mcs};
  }
  c.set_mcs_limit(mcs);
  c.sa_attempts = SaAttempts::kPerLayer;
  return c;
}

const std::vector<Preset>& builtin_presets() {
  static const std::vector<Preset> presets = {
      {"g9-case1", "G9", 1, 150, 0.0096, 100, 500000},
      {"g13-case1", "G13", 1, 150, 0.0040, 50, 500000},
      {"g18-case1", "G18", 1, 150, 0.0050, 50, 500000},
      {"g19-case1", "G19", 1, 150, 0.0065, 50, 500000},
      {"g20-case1", "G20", 1, 150, 0.0065, 50, 500000},
      {"g21-case1", "G21", 1, 150, 0.0065, 50, 500000},
      {"g34-case1", "G34", 1, 200, 0.0050, 50, 6000000},
      {"g9-case2", "G9", 2, 150, 0.0040, 50, 500000},
      {"g20-case2", "G20", 2, 150, 0.0020, 50, 500000},
      {"g34-case2", "G34", 2, 200, 0.0010, 50, 6000000},
  };
  return presets;
}

std::optional<Preset> find_preset(std::string_view name) {
  for (const auto& p : builtin_presets())
    if (p.name == name) return p;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

json schedule_json(const Schedule& s) {
  return {{"mode", std::string(to_string(s.mode))},
          {"initial", s.initial},
          {"floor_factor", s.floor_factor},
          {"total_mcs", s.total_mcs}};
}

Schedule schedule_from(const json& j) {
  Schedule s;
  s.mode = parse_schedule_mode(j.at("mode").get<std::string>());
  s.initial = j.at("initial").get<double>();
  s.floor_factor = j.at("floor_factor").get<double>();
  s.total_mcs = j.at("total_mcs").get<std::uint64_t>();
  return s;
}

json config_json(const AnnealRunConfig& c) {
  return {{"algorithm", std::string(to_string(c.algorithm))},
          {"trotter", c.trotter},
          {"temperature", schedule_json(c.temperature)},
          {"gamma", schedule_json(c.gamma)},
          {"jperp_scale", c.jperp_scale},
          {"mcs_limit", c.mcs_limit},
          {"seed", c.seed},
          {"sa_attempts_per_mcs", std::string(to_string(c.sa_attempts))},
          {"worker_count", c.worker_count},
          {"trace_stride", c.effective_stride()}};
}

AnnealRunConfig config_from(const json& j) {
  AnnealRunConfig c;
  c.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  c.trotter = j.at("trotter").get<std::size_t>();
  c.temperature = schedule_from(j.at("temperature"));
  c.gamma = schedule_from(j.at("gamma"));
  c.jperp_scale = j.at("jperp_scale").get<double>();
  c.mcs_limit = j.at("mcs_limit").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.sa_attempts = parse_sa_attempts(j.at("sa_attempts_per_mcs").get<std::string>());
  c.worker_count = j.at("worker_count").get<std::size_t>();
  c.trace_stride = j.at("trace_stride").get<std::uint64_t>();
  return c;
}

}  // namespace

void write_summary_json(std::ostream& out, const SummaryStats& stats,
                        const AnnealRunConfig& config, std::uint64_t base_seed) {
  json trials = json::array();
  for (std::size_t i = 0; i < stats.per_trial_best.size(); ++i)
    trials.push_back({{"trial", i},
                      {"seed", base_seed + i},
                      {"best_cut", stats.per_trial_best[i]},
                      {"mcs_to_best", stats.per_trial_mcs_to_best[i]}});
  json doc = {{"graph", stats.graph},
              {"algorithm", std::string(to_string(stats.algorithm))},
              {"trial_count", stats.trials},
              {"average_best_cut", stats.average_best_cut},
              {"best_observed_cut", stats.best_cut},
              {"bkc", stats.bkc ? json(*stats.bkc) : json(nullptr)},
              {"times_reaching_bkc",
               stats.times_reaching_bkc ? json(*stats.times_reaching_bkc) : json("n/a")},
              {"bkc_exceeded", stats.bkc_exceeded},
              {"mean_mcs_to_best", stats.mean_mcs_to_best},
              {"base_seed", base_seed},
              {"config", config_json(config)},
              {"trials", std::move(trials)}};
  out << doc.dump(2) << '\n';
}

void write_paired_json(std::ostream& out, const PairedReport& report, std::uint64_t base_seed) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"trial", r.trial},
                    {"seed", r.seed},
                    {"cut_a", r.cut_a},
                    {"cut_b", r.cut_b},
                    {"delta", r.delta()}});
  json doc = {{"graph", report.graph},
              {"base_seed", base_seed},
              {"config_a", config_json(report.config_a)},
              {"config_b", config_json(report.config_b)},
              {"mean_a", report.mean_a},
              {"mean_b", report.mean_b},
              {"mean_difference", report.mean_difference},
              {"wins", report.wins},
              {"losses", report.losses},
              {"ties", report.ties},
              {"pairs", std::move(rows)}};
  out << doc.dump(2) << '\n';
}

SummaryReplay read_summary_json(std::istream& in) {
  try {
    const json doc = json::parse(in);
    SummaryReplay r;
    r.config = config_from(doc.at("config"));
    r.base_seed = doc.at("base_seed").get<std::uint64_t>();
    r.trials = doc.at("trial_count").get<std::size_t>();
    for (const auto& t : doc.at("trials")) r.per_trial_best.push_back(t.at("best_cut").get<Energy>());
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed summary file: ") + e.what());
  }
}

}  // namespace mianneal
