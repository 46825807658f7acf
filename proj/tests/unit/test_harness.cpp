#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mianneal/harness.hpp"

using namespace mianneal;

namespace {

TrialResult with_best(Energy cut, std::uint64_t mcs = 0) {
  TrialResult r;
  r.best_cut = cut;
  r.mcs_to_best = mcs;
  return r;
}

AnnealRunConfig small_config(Algorithm algo, std::uint64_t mcs = 2000) {
  AnnealRunConfig c;
  c.algorithm = algo;
  c.trotter = 6;
  c.temperature = {ScheduleMode::kGeometric, 1.5, 1e-3, mcs};
  c.gamma = {ScheduleMode::kGeometric, 1.0, 1e-3, mcs};
  c.set_mcs_limit(mcs);
  c.sa_attempts = SaAttempts::kPerLayer;
  return c;
}

const ProblemGraph& test_graph() {
  static const ProblemGraph g = make_random_graph(40, 0.25, 8, {-1, 1}, "rand40");
  return g;
}

}  // namespace

TEST_CASE("summary statistics") {
  const auto s = summarize({with_best(2054, 10), with_best(2050, 30)}, 2054, "G9", Algorithm::kMi);
  CHECK(s.average_best_cut == 2052.0);
  CHECK(s.best_cut == 2054);
  CHECK(s.times_reaching_bkc == 1u);
  CHECK_FALSE(s.bkc_exceeded);
  CHECK(s.mean_mcs_to_best == 20.0);
  CHECK(s.per_trial_best == std::vector<Energy>{2054, 2050});

  const auto single = summarize({with_best(17)}, std::nullopt);
  CHECK(single.average_best_cut == 17.0);
  CHECK_FALSE(single.times_reaching_bkc.has_value());

  const auto above = summarize({with_best(2056), with_best(2054)}, 2054);
  CHECK(above.times_reaching_bkc == 2u);
  CHECK(above.bkc_exceeded);

  CHECK_THROWS_AS(summarize({}, 1), std::invalid_argument);
}

TEST_CASE("summary is invariant under reordering") {
  std::vector<TrialResult> results;
  for (int i = 0; i < 37; ++i) results.push_back(with_best(900 + (i * 7919) % 41, i));
  const auto base = summarize(results, 930);
  std::mt19937_64 gen(5);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(results.begin(), results.end(), gen);
    const auto s = summarize(results, 930);
    CHECK(s.average_best_cut == base.average_best_cut);
    CHECK(s.best_cut == base.best_cut);
    CHECK(s.times_reaching_bkc == base.times_reaching_bkc);
    CHECK(s.mean_mcs_to_best == base.mean_mcs_to_best);
    auto a = s.per_trial_best, b = base.per_trial_best;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("single trial equals a direct run") {
  auto c = small_config(Algorithm::kMi);
  c.seed = 41;
  const auto trials = run_trials(test_graph(), c, 1, 41);
  const auto direct = anneal(test_graph(), c);
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].best_cut == direct.best_cut);
  CHECK(trials[0].trace == direct.trace);
  CHECK_THROWS_AS(run_trials(test_graph(), c, 0, 41), std::invalid_argument);
}

TEST_CASE("concurrent trials match sequential trials") {
  for (auto algo : {Algorithm::kSa, Algorithm::kSqa, Algorithm::kMi}) {
    const auto c = small_config(algo);
    const auto seq = run_trials(test_graph(), c, 6, 100, 1);
    const auto par = run_trials(test_graph(), c, 6, 100, 3);
    for (std::size_t i = 0; i < 6; ++i) {
      CHECK(seq[i].best_cut == par[i].best_cut);
      CHECK(seq[i].trace == par[i].trace);
    }
    CHECK(run_trials(test_graph(), c, 6, 100, 1)[3].trace == seq[3].trace);
  }
}

TEST_CASE("paired comparison") {
  const auto c = small_config(Algorithm::kMi, 500);
  const auto self = compare_paired(test_graph(), c, c, 4, 9);
  CHECK(self.ties == 4);
  CHECK(self.wins == 0);
  CHECK(self.losses == 0);
  CHECK(self.mean_difference == 0.0);

  const auto mixed = compare_paired(test_graph(), c, small_config(Algorithm::kSqa, 500), 10, 3);
  REQUIRE(mixed.rows.size() == 10);
  CHECK(mixed.wins + mixed.losses + mixed.ties == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(mixed.rows[i].trial == i);
    CHECK(mixed.rows[i].seed == 3 + i);
  }
  CHECK(mixed.mean_difference == doctest::Approx(mixed.mean_a - mixed.mean_b));

  CHECK_THROWS_AS(compare_paired(test_graph(), c, small_config(Algorithm::kSa, 600), 2, 0),
                  std::invalid_argument);
}

TEST_CASE("trace files round-trip") {
  auto c = small_config(Algorithm::kMi, 3000);
  c.jperp_scale = 0.7;
  c.trace_stride = 30;
  const auto r = anneal(test_graph(), c);
  std::stringstream buf;
  write_trace_csv(buf, r.trace);
  std::string header;
  std::getline(buf, header);
  CHECK(header == kTraceHeader);
  buf.seekg(0);
  CHECK(read_trace_csv(buf) == r.trace);

  std::istringstream bad(std::string(kTraceHeader) + "\n1,2,3\n");
  CHECK_THROWS_AS(read_trace_csv(bad), GraphParseError);
  std::istringstream headless("1,2,3,4,5,6,7,8\n");
  CHECK_THROWS_AS(read_trace_csv(headless), GraphParseError);
}

TEST_CASE("summary files replay exactly") {
  auto c = small_config(Algorithm::kSqa, 800);
  c.jperp_scale = 1.25;
  const auto results = run_trials(test_graph(), c, 3, 55);
  const auto stats = summarize(results, std::nullopt, test_graph().name(), c.algorithm);
  std::stringstream buf;
  write_summary_json(buf, stats, c, 55);
  CHECK(buf.str().find("\"times_reaching_bkc\": \"n/a\"") != std::string::npos);

  const auto replay = read_summary_json(buf);
  CHECK(replay.base_seed == 55);
  CHECK(replay.trials == 3);
  CHECK(replay.per_trial_best == stats.per_trial_best);
  auto expected = c;
  expected.trace_stride = c.effective_stride();
  CHECK(replay.config == expected);
  const auto again = run_trials(test_graph(), replay.config, replay.trials, replay.base_seed);
  for (std::size_t i = 0; i < 3; ++i) CHECK(again[i].best_cut == replay.per_trial_best[i]);

  std::istringstream broken("{\"config\": 3}");
  CHECK_THROWS_AS(read_summary_json(broken), std::invalid_argument);
}

TEST_CASE("presets follow the published tables") {
  const auto& presets = builtin_presets();
  REQUIRE(presets.size() == 10);
  struct Row {
    const char* name;
    const char* graph;
    int experiment_case;
    std::size_t trotter;
    double temperature;
    std::size_t trials;
    std::uint64_t mcs;
  };
  const Row expected[] = {
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
  for (const auto& row : expected) {
    const auto p = find_preset(row.name);
    REQUIRE(p.has_value());
    CHECK(p->graph == row.graph);
    CHECK(p->experiment_case == row.experiment_case);
    CHECK(p->trotter == row.trotter);
    CHECK(p->initial_temperature == row.temperature);
    CHECK(p->trials == row.trials);
    CHECK(p->mcs == row.mcs);
    const auto c = p->to_config(Algorithm::kMi);
    CHECK_NOTHROW(c.validate());
    CHECK(c.mcs_limit == row.mcs);
    CHECK(c.gamma.initial == 1.0);
    if (row.experiment_case == 1) {
      CHECK(c.temperature.mode == ScheduleMode::kGeometric);
      CHECK(c.gamma.mode == ScheduleMode::kGeometric);
    } else {
      CHECK(c.temperature.mode == ScheduleMode::kConstant);
      CHECK(c.gamma.mode == ScheduleMode::kInverseMcs);
    }
  }
  CHECK_FALSE(find_preset("g1-case1").has_value());
}
