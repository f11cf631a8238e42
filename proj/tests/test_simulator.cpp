#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mtasep/jsonio.hpp"
#include "mtasep/simulator.hpp"

using namespace mtasep;

namespace {

InteractionMatrix natural(const std::string& label, int N) {
  return extension_matrix(extend_natural(catalog_get(label), N));
}

// the exchange-or-block rule of the two-species process, i.e. bar(b2)
InteractionMatrix exchange_rule() {
  auto m = bar(catalog_get("b2"));
  return extension_matrix(extend_natural(m, 2));
}

double poisson(double t, long k) {
  double p = std::exp(-t);
  for (long i = 1; i <= k; ++i) p *= t / static_cast<double>(i);
  return p;
}

}  // namespace

TEST_CASE("exchange rule: higher species overtakes, lower is blocked") {
  ColumnSampler sampler(exchange_rule());
  SplitMix64 rng(1);
  // species 2 at 0 jumps onto species 1 at 1: swap
  Configuration c{{0, 1}, {2, 1}};
  Configuration after = step(c, 0, sampler, Rule::Backward, rng);
  CHECK(after.positions == std::vector<long>{0, 1});
  CHECK(after.species == std::vector<int>{1, 2});
  // species 1 jumps onto species 2: blocked
  Configuration blocked{{0, 1}, {1, 2}};
  after = step(blocked, 0, sampler, Rule::Backward, rng);
  CHECK(after.positions == blocked.positions);
  CHECK(after.species == blocked.species);
}

TEST_CASE("free jumps advance one site") {
  ColumnSampler sampler(natural("b2", 2));
  SplitMix64 rng(2);
  Configuration c{{0, 5}, {1, 2}};
  Configuration after = step(c, 0, sampler, Rule::Backward, rng);
  CHECK(after.positions == std::vector<long>{1, 5});
  after = step(c, 1, sampler, Rule::DropPush, rng);
  CHECK(after.positions == std::vector<long>{0, 6});
}

TEST_CASE("b5 interactions are deterministic: both particles become the pair max") {
  ColumnSampler sampler(natural("b5", 3));
  SplitMix64 rng(3);
  Configuration c{{0, 1}, {1, 3}};
  Configuration after = step(c, 0, sampler, Rule::Backward, rng);
  CHECK(after.species == std::vector<int>{3, 3});
  CHECK(after.positions == std::vector<long>{0, 1});
}

TEST_CASE("sampled outcomes match the matrix column (multinomial, 4 sigma)") {
  auto B = param_family_extension(rat(1, 2), rat(1, 3), 2);
  ColumnSampler sampler(B);
  SplitMix64 rng(4);
  const int trials = 10000;
  int stayed = 0;
  for (int k = 0; k < trials; ++k) {
    Configuration c{{0, 1}, {1, 2}};
    Configuration after = step(c, 0, sampler, Rule::Backward, rng);
    if (after.species == std::vector<int>{1, 2}) ++stayed;
    else CHECK(after.species == std::vector<int>{2, 2});
  }
  double p = 0.5, se = std::sqrt(p * (1 - p) / trials);
  CHECK(std::abs(stayed / double(trials) - p) < 4 * se);
}

TEST_CASE("drop-push cascade pushes through to the first empty site") {
  ColumnSampler sampler(natural("b2", 2));
  SplitMix64 rng(5);
  Configuration c{{0, 1, 2}, {1, 1, 1}};
  Configuration after = step(c, 0, sampler, Rule::DropPush, rng);
  CHECK(after.positions == std::vector<long>{1, 2, 3});
  CHECK(after.species == std::vector<int>{1, 1, 1});
}

TEST_CASE("exclusion and particle count survive random evolution") {
  auto B = param_family_extension(rat(1, 3), rat(2, 3), 3);
  ColumnSampler sampler(B);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    SplitMix64 rng(6);
    Configuration c{{0, 1, 2, 5}, {3, 1, 2, 1}};
    for (int k = 0; k < 2000; ++k) {
      int jumper = static_cast<int>(rng.bounded(4));
      c = step(c, jumper, sampler, rule, rng);
      REQUIRE(c.positions.size() == 4);
      REQUIRE(c.species.size() == 4);
      REQUIRE(c.valid(3));
    }
  }
}

TEST_CASE("backward interactions never move positions") {
  ColumnSampler sampler(natural("b5", 2));
  SplitMix64 rng(7);
  Configuration c{{3, 4}, {1, 2}};
  for (int k = 0; k < 50; ++k) {
    Configuration after = step(c, 0, sampler, Rule::Backward, rng);
    CHECK(after.positions == c.positions);
    c.species = after.species;
  }
}

TEST_CASE("single-particle displacement is Poisson for both rules") {
  auto B = natural("b1", 2);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    auto out = simulate(Configuration{{0}, {1}}, B, rule, 1.0, 20000, 99);
    long total = 0;
    for (const auto& [key, count] : out.histogram) total += count;
    CHECK(total == out.trials);
    for (long k = 0; k <= 4; ++k) {
      auto it = out.histogram.find(std::to_string(k) + "|1");
      double observed = it == out.histogram.end() ? 0.0 : double(it->second);
      double p = poisson(1.0, k);
      double se = std::sqrt(p * (1 - p) * out.trials);
      CHECK(std::abs(observed - p * out.trials) < 4 * se);
    }
  }
}

TEST_CASE("the identity rule never rewrites species") {
  auto out = simulate(Configuration{{0, 1}, {2, 1}}, natural("b1", 2),
                      Rule::Backward, 2.0, 2000, 123);
  for (const auto& [key, count] : out.histogram) {
    auto c = configuration_from_key(key);
    CHECK(c.species == std::vector<int>{2, 1});
  }
}

TEST_CASE("simulation is reproducible and refuses non-stochastic rules") {
  auto B = natural("b2", 2);
  auto a = sim_to_json(simulate(Configuration{{0, 1}, {2, 1}}, B, Rule::Backward,
                                1.0, 500, 2024));
  auto b = sim_to_json(simulate(Configuration{{0, 1}, {2, 1}}, B, Rule::Backward,
                                1.0, 500, 2024));
  CHECK(a.dump() == b.dump());

  InteractionMatrix bad{2, catalog_get("b16").entries, "b16@N=2"};
  CHECK_THROWS_AS(simulate(Configuration{{0, 1}, {1, 2}}, bad, Rule::Backward, 1.0,
                           10, 1),
                  NonStochasticError);
}

TEST_CASE("estimate_kernel_entry at t = 0 is exactly (1, 0)") {
  auto B = natural("b2", 2);
  Configuration c{{0, 1}, {1, 2}};
  auto [p, se] = estimate_kernel_entry(c, c, B, Rule::Backward, 0.0, 1000, 5);
  CHECK(p == 1.0);
  CHECK(se == 0.0);
}

TEST_CASE("configuration keys round-trip") {
  Configuration c{{-2, 0, 7}, {3, 1, 2}};
  CHECK(c.key() == "-2,0,7|312");
  auto back = configuration_from_key(c.key());
  CHECK(back.positions == c.positions);
  CHECK(back.species == c.species);
}
