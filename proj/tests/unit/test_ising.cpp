#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mianneal/ising.hpp"
#include "oracles.hpp"

using namespace mianneal;
using mianneal::testing::energy_by_matrix;
using mianneal::testing::with_flip;

namespace {

struct JperpReference {
  std::size_t trotter;
  double temperature;
  double gamma;
  double value;
};

constexpr JperpReference kJperpTable[] = {
#include "jperp_reference.inc"
};

const ProblemGraph kTriangle("triangle", 3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
const ProblemGraph kPath("path", 3, {{0, 1, 1}, {1, 2, 1}});

SpinConfiguration spins(std::initializer_list<int> values) {
  std::vector<Spin> v;
  for (int x : values) v.push_back(static_cast<Spin>(x));
  return SpinConfiguration(v);
}

SpinConfiguration random_spins(std::size_t n, std::mt19937_64& gen) {
  std::vector<Spin> v(n);
  for (auto& s : v) s = (gen() & 1) ? Spin{1} : Spin{-1};
  return SpinConfiguration(v);
}

}  // namespace

TEST_CASE("spin configurations reject values other than +-1") {
  CHECK_THROWS_AS(SpinConfiguration(std::vector<Spin>{1, 0, -1}), std::invalid_argument);
  CHECK_THROWS_AS(SpinConfiguration(3, Spin{2}), std::invalid_argument);
}

TEST_CASE("random initial spins depend only on seed and stream") {
  const StreamRng rng(9);
  const auto a = SpinConfiguration::random(300, rng, 2);
  CHECK(a == SpinConfiguration::random(300, rng, 2));
  CHECK_FALSE(a == SpinConfiguration::random(300, rng, 3));
  int up = 0;
  for (std::size_t i = 0; i < a.size(); ++i) up += a[i] == 1;
  CHECK(up > 100);
  CHECK(up < 200);
}

TEST_CASE("layer energy examples") {
  CHECK(layer_energy(kTriangle, spins({1, 1, 1})) == 3);
  CHECK(layer_energy(kTriangle, spins({1, 1, -1})) == -1);
  CHECK(layer_energy(kPath, spins({1, -1, 1})) == -2);
  CHECK_THROWS_AS(layer_energy(kTriangle, spins({1, 1})), std::invalid_argument);
}

TEST_CASE("cut value examples") {
  CHECK(cut_value(kTriangle, spins({1, 1, 1})) == 0);
  CHECK(cut_value(kTriangle, spins({-1, -1, -1})) == 0);
  CHECK(cut_value(kTriangle, spins({1, 1, -1})) == 2);
  CHECK(cut_from_energy(kTriangle, -1) == 2);
}

TEST_CASE("cut and energy identity on random configurations") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = make_random_graph(10 + trial % 20, 0.4, trial, {-3, -1, 1, 2});
    const auto s = random_spins(g.n_nodes(), gen);
    const Energy e = layer_energy(g, s);
    REQUIRE(e == energy_by_matrix(g, s));
    REQUIRE(2 * cut_value(g, s) + e == g.total_weight());
    REQUIRE(layer_energy(g, s.flipped_all()) == e);
    REQUIRE(cut_value(g, s.flipped_all()) == cut_value(g, s));
  }
}

TEST_CASE("problem delta examples") {
  CHECK(delta_problem(kPath, spins({1, 1, 1}), 1) == -4);
  const ProblemGraph isolated("iso", 3, {{0, 1, 1}});
  CHECK(delta_problem(isolated, spins({1, -1, 1}), 2) == 0);
  CHECK_THROWS_AS(delta_problem(kPath, spins({1, 1, 1}), 3), std::out_of_range);
}

TEST_CASE("problem delta matches recomputation on random cases") {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto g = make_random_graph(2 + trial % 30, 0.3, 1000 + trial, {-2, -1, 1, 1, 4});
    const auto s = random_spins(g.n_nodes(), gen);
    const auto site = static_cast<NodeIndex>(gen() % g.n_nodes());
    const auto before = s;
    REQUIRE(delta_problem(g, s, site) ==
            energy_by_matrix(g, with_flip(s, site)) - energy_by_matrix(g, s));
    REQUIRE(s == before);
  }
}

TEST_CASE("j_perp matches the high-precision reference grid") {
  REQUIRE(std::size(kJperpTable) == 100);
  for (const auto& row : kJperpTable) {
    const double got = j_perp(row.trotter, row.temperature, row.gamma);
    INFO("P=" << row.trotter << " T=" << row.temperature << " gamma=" << row.gamma);
    CHECK(got > 0.0);
    CHECK(std::abs(got - row.value) <= 1e-12 * row.value);
  }
}

TEST_CASE("j_perp reference point and limits") {
  CHECK(j_perp(150, 0.0096, 1.0) == doctest::Approx(0.36680).epsilon(1e-5));
  CHECK(j_perp(4, 0.1, 50.0) < 1e-40);
  CHECK(j_perp(4, 0.1, 50.0) > 0.0);
  CHECK(j_perp(4, 0.1, 1e-12) > 5.0);
  CHECK(j_perp(4, 0.1, 1e-200) > j_perp(4, 0.1, 1e-12));
  CHECK_THROWS_AS(j_perp(0, 0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(j_perp(4, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(j_perp(4, 0.1, -1.0), std::domain_error);
}

TEST_CASE("j_perp is strictly decreasing in gamma") {
  for (std::size_t p : {1u, 8u, 150u, 200u}) {
    for (double t : {1e-4, 0.0096, 0.5}) {
      double previous = j_perp(p, t, 1e-6);
      for (int step = 1; step <= 100; ++step) {
        const double gamma = 1e-6 * std::pow(1.2, step);
        if (gamma / (p * t) > 300.0) break;
        const double current = j_perp(p, t, gamma);
        REQUIRE(current < previous);
        previous = current;
      }
    }
  }
}

TEST_CASE("imitation interlayer delta") {
  CHECK(interlayer_delta_mi(spins({1, 1}), spins({1, -1}), 0, 0.5) == 1.0);
  CHECK(interlayer_delta_mi(spins({1, 1}), spins({1, -1}), 1, 0.5) == -1.0);
  CHECK_THROWS_AS(interlayer_delta_mi(spins({1, 1}), spins({1}), 0, 0.5), std::invalid_argument);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> jp(0.0, 5.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + trial % 40;
    const auto s = random_spins(n, gen);
    const auto m = random_spins(n, gen);
    const auto site = static_cast<NodeIndex>(gen() % n);
    const double j = jp(gen);
    const double expected = testing::mi_interlayer_energy(with_flip(s, site), m, j) -
                            testing::mi_interlayer_energy(s, m, j);
    REQUIRE(std::abs(interlayer_delta_mi(s, m, site, j) - expected) <= 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("trotter interlayer delta") {
  const std::vector<SpinConfiguration> aligned = {spins({1}), spins({1}), spins({1})};
  CHECK(interlayer_delta_sqa(aligned, 1, 0, 0.5) == 2.0);
  const std::vector<SpinConfiguration> opposite = {spins({1}), spins({1}), spins({-1})};
  CHECK(interlayer_delta_sqa(opposite, 1, 0, 0.5) == 0.0);
  CHECK_THROWS_AS(interlayer_delta_sqa(std::vector<SpinConfiguration>{spins({1})}, 0, 0, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(interlayer_delta_sqa(aligned, 3, 0, 0.5), std::out_of_range);

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> jp(0.0, 5.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + trial % 17;
    const std::size_t p = 2 + trial % 9;
    std::vector<SpinConfiguration> layers;
    for (std::size_t k = 0; k < p; ++k) layers.push_back(random_spins(n, gen));
    const std::size_t k = gen() % p;
    const auto site = static_cast<NodeIndex>(gen() % n);
    const double j = jp(gen);
    auto flipped = layers;
    flipped[k].flip(site);
    const double expected = testing::sqa_interlayer_energy(flipped, j) -
                            testing::sqa_interlayer_energy(layers, j);
    REQUIRE(std::abs(interlayer_delta_sqa(layers, k, site, j) - expected) <=
            1e-12 * (1.0 + std::abs(expected)));
  }
}
