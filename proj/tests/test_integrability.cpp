#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtasep/integrability.hpp"
#include "mtasep/jsonio.hpp"

using namespace mtasep;

namespace {

InteractionMatrix natural(const std::string& label, int N) {
  return extension_matrix(extend_natural(catalog_get(label), N));
}

}  // namespace

TEST_CASE("b2 and b1 natural extensions pass all three relations") {
  for (const char* label : {"b1", "b2"}) {
    for (Rule rule : {Rule::Backward, Rule::DropPush}) {
      auto v = check_yang_baxter(natural(label, 3), 3, rule, 42);
      CHECK(v.passes_a);
      CHECK(v.passes_b);
      CHECK(v.passes_c);
      CHECK(!v.witness.has_value());
    }
  }
}

TEST_CASE("the b2/b3 midpoint mixture fails Yang-Baxter with a sound witness") {
  auto mixed = extend_natural(convex_mix("b2", "b3", rat(1, 2)), 3);
  auto B = extension_matrix(mixed);
  auto v = check_yang_baxter(B, 3, Rule::Backward, 42);
  CHECK(!v.integrable());
  CHECK(!v.passes_c);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->relation == 'c');
  CHECK(reverify_witness(B, Rule::Backward, *v.witness));
}

TEST_CASE("natural-extension classification matches the certified seven") {
  auto cls = classify_natural_extensions(2, 42, Rule::Backward);
  CHECK(cls.integrable == known_natural_set());
  CHECK(cls.inconsistent.size() == 21);
  CHECK(cls.inconsistent.count(6) == 1);
  CHECK(cls.inconsistent.count(10) == 1);
}

TEST_CASE("convex-mixture classification matches lists (i), (ii), (iii)") {
  auto cls = classify_convex_mixtures({rat(1, 2)}, 2, 42, Rule::Backward);
  CHECK(cls.integrable == known_convex_pairs());
  CHECK(cls.integrable.count({1, 13}) == 1);
  CHECK(cls.integrable.count({4, 11}) == 1);
  CHECK(cls.integrable.count({2, 3}) == 0);
}

TEST_CASE("parameter family passes on a small grid") {
  std::vector<std::pair<Rational, Rational>> grid = {
      {rat(1), rat(1)}, {rat(1, 2), rat(1, 3)}, {rat(0), rat(1)}};
  auto cls = classify_param_family(grid, 2, 42, Rule::Backward);
  CHECK(cls.all_pass());
}

TEST_CASE("asymmetric classification matches the fifteen") {
  auto cls = classify_asymmetric_extensions(2, 42, Rule::Backward);
  CHECK(cls.integrable == known_asymmetric_set());
  CHECK(cls.not_applicable.count(20) == 1);
  CHECK(cls.not_applicable.count(16) == 1);
  CHECK(cls.integrable.count(18) == 0);  // applicable but fails relation (c)
  CHECK(cls.verdicts.at(18).passes_c == false);
}

TEST_CASE("identical seeds give identical verdict JSON") {
  auto B = natural("b13", 3);
  auto a = verdict_to_json(check_yang_baxter(B, 4, Rule::Backward, 7)).dump();
  auto b = verdict_to_json(check_yang_baxter(B, 4, Rule::Backward, 7)).dump();
  CHECK(a == b);
  auto c = verdict_to_json(check_yang_baxter(B, 4, Rule::Backward, 8)).dump();
  CHECK(a != c);  // the seed is part of the record
}

TEST_CASE("a failure at any sample fails the verdict") {
  auto mixed = extend_natural(convex_mix("b2", "b13", rat(1, 2)), 3);
  auto B = extension_matrix(mixed);
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto v = check_yang_baxter(B, 5, Rule::Backward, seed);
    CHECK(!v.integrable());
  }
}

TEST_CASE("spectral sampling respects bounds and admissibility") {
  auto B = natural("b5", 3);
  SplitMix64 rng(11);
  auto xi = sample_spectral_rationals(B, Rule::Backward, 6, rng);
  CHECK(xi.size() == 6);
  for (const auto& v : xi) {
    CHECK(!is_zero(v));
    CHECK(abs(v.get_num()) <= 64);
    CHECK(v.get_den() <= 64);
    CHECK(v != 1);  // eigenvalue-1 resolvent would be singular
  }
}

// The drop-push braid relation for a rule equals the backward relation
// for the slot-flipped rule (labels ij -> ji). The flip maps b4<->b3 and
// b11<->b13, so the drop-push mixture classification is the flip image
// of the backward one: (4,11) drops out and (3,13) enters. Pinned here
// with exact certificates; the backward sweeps are unaffected.
TEST_CASE("drop-push convex classification is the flip image of backward") {
  auto cls = classify_convex_mixtures({rat(1, 2)}, 3, 42, Rule::DropPush);
  std::set<std::pair<int, int>> expected = known_convex_pairs();
  expected.erase({4, 11});
  expected.insert({3, 13});
  CHECK(cls.integrable == expected);

  auto mixed_4_11 = extension_matrix(extend_natural(convex_mix("b4", "b11", rat(1, 2)), 3));
  auto v = check_yang_baxter(mixed_4_11, 3, Rule::DropPush, 42);
  CHECK(!v.passes_c);
  REQUIRE(v.witness.has_value());
  CHECK(reverify_witness(mixed_4_11, Rule::DropPush, *v.witness));

  auto mixed_3_13 = extension_matrix(extend_natural(convex_mix("b3", "b13", rat(1, 2)), 3));
  CHECK(check_yang_baxter(mixed_3_13, 3, Rule::DropPush, 42).integrable());
}
