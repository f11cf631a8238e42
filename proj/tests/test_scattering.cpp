#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mtasep/catalog.hpp"
#include "mtasep/scattering.hpp"
#include "mtasep/species.hpp"
#include "test_util.hpp"

using namespace mtasep;
using testutil::random_rational;

namespace {

InteractionMatrix natural(const std::string& label, int N) {
  return extension_matrix(extend_natural(catalog_get(label), N));
}

}  // namespace

TEST_CASE("scattering for the identity rule is a scalar multiple of I") {
  auto B = natural("b1", 3);
  Rational xa = rat(1, 3), xb = rat(2, 7);
  RMat R = scattering(B, xa, xb, Rule::Backward);
  Rational scalar = -(Rational(1) - xb) / (Rational(1) - xa);
  CHECK(R == RMat::identity(9).scaled(scalar));
}

TEST_CASE("R_{alpha beta} R_{beta alpha} is the identity (b2 at xi = 1/3, 1/5)") {
  auto B = natural("b2", 3);
  Rational xa = rat(1, 3), xb = rat(1, 5);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    RMat prod = scattering(B, xb, xa, rule) * scattering(B, xa, xb, rule);
    CHECK(prod == RMat::identity(9));
  }
}

TEST_CASE("closed forms at coincident spectral parameters") {
  Rational x = rat(2, 5);
  CHECK(closed_form_S(rat(1), x, x) == rat(-1));
  CHECK(closed_form_T(rat(1, 3), x, x) == 0);
}

TEST_CASE("closed-form denominators are reported when they vanish") {
  CHECK_THROWS_AS(closed_form_S(rat(2), rat(1, 2), rat(1, 3)), DivisionByZeroError);
  CHECK_THROWS_AS(closed_form_T(rat(1, 2), rat(1), rat(1, 3)), DivisionByZeroError);
}

TEST_CASE("parameter-family scattering matrix matches its closed form") {
  SplitMix64 rng(404);
  int done = 0;
  while (done < 20) {
    Rational lam = abs(random_rational(rng, 8));
    Rational lamp = abs(random_rational(rng, 8));
    if (lam > 1 || lamp > 1) continue;
    Rational xa = random_rational(rng), xb = random_rational(rng);
    auto B = param_family_extension(lam, lamp, 3);
    RMat direct;
    try {
      direct = scattering(B, xa, xb, Rule::Backward);
    } catch (const SingularResolventError&) {
      continue;
    }
    RMat closed;
    try {
      closed = param_closed_form_R(3, lam, lamp, xa, xb);
    } catch (const DivisionByZeroError&) {
      continue;
    }
    CHECK(direct == closed);
    ++done;
  }
}

TEST_CASE("parameter-family R has the documented sparsity pattern at N=3") {
  Rational lam = rat(1, 2), lamp = rat(1, 3), xa = rat(1, 7), xb = rat(2, 5);
  auto B = param_family_extension(lam, lamp, 3);
  RMat R = scattering(B, xa, xb, Rule::Backward);
  auto cell = [&](int a, int b, int c, int d) {
    return R(pair_rank(a, b, 3), pair_rank(c, d, 3));
  };
  CHECK(cell(1, 1, 1, 1) == closed_form_S(rat(1), xa, xb));
  CHECK(cell(1, 2, 1, 2) == closed_form_S(lam, xa, xb));
  CHECK(cell(2, 1, 2, 1) == closed_form_S(lamp, xa, xb));
  CHECK(cell(2, 2, 1, 2) == closed_form_T(Rational(1) - lam, xa, xb));
  CHECK(cell(2, 2, 2, 1) == closed_form_T(Rational(1) - lamp, xa, xb));
  CHECK(cell(3, 3, 1, 3) == closed_form_T(Rational(1) - lam, xa, xb));
  CHECK(cell(3, 3, 3, 2) == closed_form_T(Rational(1) - lamp, xa, xb));
  CHECK(cell(1, 1, 2, 2) == 0);
  CHECK(cell(1, 2, 2, 1) == 0);
}

TEST_CASE("rescaled scattering equals the mixture construction") {
  const RMat& b3 = catalog_get("b3").entries;
  Rational a = rat(1, 4), b = rat(3, 4);
  Rational xa = rat(1, 7), xb = rat(2, 5);
  RMat rescaled = rescaled_scattering(a, b, b3, xa, xb);
  RMat mixture = catalog_get("b1").entries.scaled(a) + b3.scaled(b);
  CHECK(rescaled == scattering(mixture, xa, xb, Rule::Backward));
}

TEST_CASE("rescaled scattering endpoints") {
  const RMat& b2 = catalog_get("b2").entries;
  Rational xa = rat(1, 3), xb = rat(1, 6);
  CHECK(rescaled_scattering(rat(0), rat(1), b2, xa, xb) ==
        scattering(b2, xa, xb, Rule::Backward));
  RMat pure = rescaled_scattering(rat(1), rat(0), b2, xa, xb);
  Rational scalar = -(Rational(1) - xb) / (Rational(1) - xa);
  CHECK(pure == RMat::identity(4).scaled(scalar));
  CHECK_THROWS_AS(rescaled_scattering(rat(1, 2), rat(1, 3), b2, xa, xb), DomainError);
}

TEST_CASE("backward and drop-push constructions swap under xi -> 1/xi") {
  // scattering(B, 1/xa, 1/xb, Backward) == scattering(B, xb, xa, DropPush)
  SplitMix64 rng(505);
  auto B = natural("b2", 3);
  int done = 0;
  while (done < 10) {
    Rational xa = random_rational(rng), xb = random_rational(rng);
    if (xa == xb) continue;
    RMat lhs, rhs;
    try {
      lhs = scattering(B, Rational(1) / xa, Rational(1) / xb, Rule::Backward);
      rhs = scattering(B, xb, xa, Rule::DropPush);
    } catch (const SingularResolventError&) {
      continue;
    }
    CHECK(lhs == rhs);
    ++done;
  }
}

TEST_CASE("embedded scattering relations (a) and (b)") {
  for (const char* label : {"b2", "b5", "b13"}) {
    auto B = natural(label, 3);
    for (Rule rule : {Rule::Backward, Rule::DropPush}) {
      // the natural extensions have eigenvalues in {0,1}; any xi
      // outside {0,1} keeps every resolvent invertible
      const Rational xi[] = {rat(1, 3), rat(1, 5), rat(2, 7), rat(-3, 8)};
      RMat Rba = scattering(B, xi[0], xi[1], rule);
      RMat Rab = scattering(B, xi[1], xi[0], rule);
      for (int i : {1, 2}) {
        CHECK(embed_T(Rab, i, 3, 3) * embed_T(Rba, i, 3, 3) ==
              RMat::identity(27));
      }
      RMat Rdc = scattering(B, xi[2], xi[3], rule);
      RMat t1 = embed_T(Rba, 1, 4, 3), t3 = embed_T(Rdc, 3, 4, 3);
      CHECK(t1 * t3 == t3 * t1);
    }
  }
}

TEST_CASE("the resolvent singularity names the offending parameter") {
  auto B = natural("b2", 2);
  // column sums 1 give B the eigenvalue 1, so xi = 1 is always singular
  CHECK_THROWS_AS(scattering(B, rat(1), rat(1, 2), Rule::Backward),
                  SingularResolventError);
  CHECK_THROWS_AS(scattering(B, rat(1, 2), rat(1), Rule::DropPush),
                  SingularResolventError);
}
