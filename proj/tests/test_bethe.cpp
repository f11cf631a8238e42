#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mtasep/bethe.hpp"
#include "mtasep/jsonio.hpp"

using namespace mtasep;

namespace {

InteractionMatrix natural(const std::string& label, int N) {
  return extension_matrix(extend_natural(catalog_get(label), N));
}

double poisson(double t, long k) {
  double p = std::exp(-t);
  for (long i = 1; i <= k; ++i) p *= t / static_cast<double>(i);
  return p;
}

}  // namespace

TEST_CASE("reduced words: identity, the S3 long element, inversion lengths") {
  CHECK(reduced_words(identity_permutation(3), 2) ==
        std::vector<std::vector<int>>{{}});
  auto words = reduced_words({3, 2, 1}, 2);
  REQUIRE(words.size() == 2);
  CHECK(words[0] == std::vector<int>{1, 2, 1});
  CHECK(words[1] == std::vector<int>{2, 1, 2});
  for (const auto& sigma : all_permutations(4)) {
    for (const auto& w : all_reduced_words(sigma)) {
      CHECK(static_cast<int>(w.size()) == inversion_count(sigma));
      CHECK(apply_word(identity_permutation(4), w) == sigma);
    }
  }
}

TEST_CASE("amplitude of the identity permutation is the identity matrix") {
  auto B = natural("b2", 2);
  const Rational xi[] = {rat(1, 3), rat(1, 5)};
  RMat A = amplitude(identity_permutation(2), B.entries, 2, xi, Rule::Backward);
  CHECK(A == RMat::identity(4));
}

TEST_CASE("amplitude recursion A_{T_i sigma} = T_{i,(beta alpha)} A_sigma on S3") {
  auto B = natural("b2", 2);
  const Rational xi[] = {rat(1, 3), rat(1, 5), rat(2, 7)};
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    auto amps = all_amplitudes<Rational>(3, B.entries, 2, xi, rule);
    for (const auto& [w, A] : amps) {
      for (int i = 1; i <= 2; ++i) {
        Permutation swapped = apply_letter(w, i);
        int alpha = w[static_cast<std::size_t>(i - 1)];
        int beta = w[static_cast<std::size_t>(i)];
        RMat R = scattering(B, xi[alpha - 1], xi[beta - 1], rule);
        CHECK(amps.at(swapped) == embed_T(R, i, 3, 2) * A);
      }
    }
  }
}

TEST_CASE("amplitudes agree across distinct reduced words (S3 long element)") {
  const Rational xi[] = {rat(1, 3), rat(1, 5), rat(2, 7)};
  for (const char* label : {"b2", "b5"}) {
    auto B = natural(label, 2);
    for (Rule rule : {Rule::Backward, Rule::DropPush}) {
      auto words = reduced_words({3, 2, 1}, 2);
      RMat a = amplitude_from_word<Rational>(words[0], B.entries, 2, xi, rule);
      RMat b = amplitude_from_word<Rational>(words[1], B.entries, 2, xi, rule);
      CHECK(a == b);
    }
  }
}

TEST_CASE("single-particle kernel reproduces the Poisson law") {
  auto B = natural("b2", 2);
  QuadratureSpec quad{0.5, 128};
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    QuadratureSpec q = rule == Rule::Backward ? quad : QuadratureSpec{1.5, 128};
    for (long x = -1; x <= 6; ++x) {
      auto K = kernel(B, rule, {0}, {x}, 1.0, q);
      double want = x >= 0 ? poisson(1.0, x) : 0.0;
      for (int s = 0; s < 2; ++s) {
        CHECK(std::abs(K.matrix(s, s).real() - want) < 1e-12);
        CHECK(std::abs(K.matrix(s, 1 - s)) < 1e-12);
      }
      CHECK(K.max_imag < 1e-12);
    }
  }
}

TEST_CASE("kernel initial condition: identity at X=Y, zero off it") {
  auto B = natural("b2", 2);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    QuadratureSpec q = default_quadrature(rule);
    auto at = kernel(B, rule, {0, 1}, {0, 1}, 0.0, q);
    CHECK(max_abs_diff(at.matrix, CMat::identity(4)) < 1e-10);
    for (const auto& X : {std::vector<long>{0, 2}, {1, 2}, {0, 5}, {3, 4}}) {
      auto off = kernel(B, rule, {0, 1}, X, 0.0, q);
      CHECK(max_abs(off.matrix) < 1e-10);
    }
  }
}

TEST_CASE("kernel entries stabilize under node doubling") {
  auto B = natural("b2", 2);
  auto K = kernel_converged(B, Rule::Backward, {0, 1}, {1, 3}, 1.0,
                            QuadratureSpec{0.5, 32}, 1e-10, 512);
  CHECK(K.quad.nodes <= 512);
  auto refined = kernel(B, Rule::Backward, {0, 1}, {1, 3}, 1.0,
                        QuadratureSpec{0.5, K.quad.nodes * 2});
  CHECK(max_abs_diff(K.matrix, refined.matrix) < 1e-10);
}

TEST_CASE("drop-push kernels are radius-invariant between pole-free annuli") {
  auto B = param_family_extension(rat(1, 2), rat(1, 3), 2);
  auto a = kernel(B, Rule::DropPush, {0, 1}, {1, 2}, 0.8, QuadratureSpec{1.25, 192});
  auto b = kernel(B, Rule::DropPush, {0, 1}, {1, 2}, 0.8, QuadratureSpec{2.0, 192});
  CHECK(max_abs_diff(a.matrix, b.matrix) < 1e-9);
}

TEST_CASE("a contour through a resolvent pole is rejected") {
  auto B = natural("b2", 2);
  // drop-push poles sit at the eigenvalues of B; 1 is always one of them
  CHECK_THROWS_AS(
      kernel(B, Rule::DropPush, {0}, {1}, 0.5, QuadratureSpec{1.0, 64}),
      PoleOnContourError);
}

TEST_CASE("kernel rejects malformed configurations") {
  auto B = natural("b2", 2);
  QuadratureSpec q = default_quadrature(Rule::Backward);
  CHECK_THROWS_AS(kernel(B, Rule::Backward, {1, 0}, {0, 1}, 1.0, q), DomainError);
  CHECK_THROWS_AS(kernel(B, Rule::Backward, {0, 1}, {1, 1}, 1.0, q), DomainError);
  CHECK_THROWS_AS(kernel(B, Rule::Backward, {0, 1}, {0, 1}, -1.0, q), DomainError);
}

TEST_CASE("boundary condition holds exactly at t = 0 (both rules, n = 2)") {
  const Rational xi[] = {rat(1, 3), rat(-2, 5)};
  for (const char* label : {"b2", "b5"}) {
    auto B = natural(label, 2);
    for (Rule rule : {Rule::Backward, Rule::DropPush}) {
      for (long x : {-2L, 0L, 3L}) {
        Rational viol = boundary_residual_exact(B, rule, xi, {x, x}, 1);
        CHECK(is_zero(viol));
      }
    }
  }
}

TEST_CASE("three-particle boundary conditions hold exactly at t = 0") {
  const Rational xi[] = {rat(1, 3), rat(-2, 5), rat(3, 7)};
  auto B = param_family_extension(rat(1, 2), rat(1, 3), 3);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    CHECK(is_zero(boundary_residual_exact(B, rule, xi, {0, 0, 4}, 1)));
    CHECK(is_zero(boundary_residual_exact(B, rule, xi, {-3, 1, 1}, 2)));
  }
}

TEST_CASE("boundary condition in float at t = 0.7") {
  auto B = param_family_extension(rat(1, 2), rat(1, 3), 3);
  const Complex xi[] = {Complex(0.31, 0.12), Complex(-0.42, 0.27),
                        Complex(0.18, -0.39)};
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    CHECK(boundary_residual_float(B, rule, xi, 0.7, {0, 0, 3}, 1) < 1e-10);
    CHECK(boundary_residual_float(B, rule, xi, 0.7, {-2, 1, 1}, 2) < 1e-10);
  }
}

TEST_CASE("free-particle master equation residual is tiny") {
  auto B = natural("b2", 2);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    QuadratureSpec q = default_quadrature(rule);
    double res = master_equation_residual(B, rule, {0}, {2}, 1.0, 1e-4, q);
    CHECK(res < 1e-6);
  }
}

TEST_CASE("two-particle master equation residuals, separated and adjacent") {
  auto B = natural("b2", 2);
  for (Rule rule : {Rule::Backward, Rule::DropPush}) {
    QuadratureSpec q = default_quadrature(rule);
    CHECK(master_equation_residual(B, rule, {0, 1}, {1, 4}, 1.0, 1e-4, q) < 1e-6);
    CHECK(master_equation_residual(B, rule, {0, 1}, {2, 3}, 1.0, 1e-4, q) < 1e-6);
  }
}

TEST_CASE("conservation over the truncated window (quick check)") {
  auto B = natural("b2", 2);
  auto totals = conservation_totals(B, Rule::Backward, {0, 1}, 0.5,
                                    QuadratureSpec{0.5, 64});
  for (double s : totals) CHECK(std::abs(s - 1.0) < 1e-8);
}

TEST_CASE("kernel JSON embeds the run parameters and is reproducible") {
  auto B = natural("b2", 2);
  auto a = kernel_to_json(
      kernel(B, Rule::Backward, {0, 1}, {1, 2}, 1.0, QuadratureSpec{0.5, 64}));
  auto b = kernel_to_json(
      kernel(B, Rule::Backward, {0, 1}, {1, 2}, 1.0, QuadratureSpec{0.5, 64}));
  CHECK(a.dump() == b.dump());
  CHECK(a.at("quadrature").at("M") == 64);
  CHECK(a.at("rule") == "backward");
}

// Exact certificate behind the mixture flip: the drop-push ansatz for
// mix(b4,b11) is reduced-word dependent and breaks its own three-particle
// boundary condition, while mix(b3,b13) works under drop-push exactly.
TEST_CASE("drop-push amplitude consistency swaps the mixtures (4,11) and (3,13)") {
  const Rational xi[] = {rat(1, 3), rat(-2, 5), rat(3, 7)};
  auto words = reduced_words({3, 2, 1}, 2);

  auto B411 = extension_matrix(extend_natural(convex_mix("b4", "b11", rat(1, 2)), 3));
  RMat a = amplitude_from_word<Rational>(words[0], B411.entries, 3, xi, Rule::DropPush);
  RMat b = amplitude_from_word<Rational>(words[1], B411.entries, 3, xi, Rule::DropPush);
  CHECK(!(a == b));
  CHECK(!is_zero(boundary_residual_exact(B411, Rule::DropPush, xi, {-2, 1, 1}, 2)));
  CHECK(is_zero(boundary_residual_exact(B411, Rule::Backward, xi, {-2, 1, 1}, 2)));

  auto B313 = extension_matrix(extend_natural(convex_mix("b3", "b13", rat(1, 2)), 3));
  RMat c = amplitude_from_word<Rational>(words[0], B313.entries, 3, xi, Rule::DropPush);
  RMat d = amplitude_from_word<Rational>(words[1], B313.entries, 3, xi, Rule::DropPush);
  CHECK(c == d);
  CHECK(is_zero(boundary_residual_exact(B313, Rule::DropPush, xi, {-2, 1, 1}, 2)));
  CHECK(!is_zero(boundary_residual_exact(B313, Rule::Backward, xi, {-2, 1, 1}, 2)));
}
