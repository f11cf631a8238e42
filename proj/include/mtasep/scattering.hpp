#pragma once

#include <string>
#include <type_traits>

#include "mtasep/catalog.hpp"
#include "mtasep/matrix.hpp"
#include "mtasep/species.hpp"

namespace mtasep {

// Which particle leaves the doubly occupied site after an interaction:
// Backward sends the left one back, DropPush pushes the right one on.
enum class Rule { Backward, DropPush };

inline const char* rule_name(Rule r) {
  return r == Rule::Backward ? "backward" : "drop-push";
}

namespace detail {
template <typename T>
std::string scalar_repr(const T& v) {
  if constexpr (scalar_ops<T>::exact) {
    return to_string(v);
  } else {
    return std::to_string(v.real()) + (v.imag() < 0 ? "-" : "+") +
           std::to_string(std::abs(v.imag())) + "i";
  }
}
}  // namespace detail

// Scattering matrix R_{beta alpha} for a two-particle rule B (N^2 x N^2).
//   Backward: -(I - xi_alpha B)^{-1} (I - xi_beta B)
//   DropPush: -(I - (1/xi_beta) B)^{-1} (I - (1/xi_alpha) B)
template <typename T>
Mat<T> scattering(const Mat<T>& B, const std::type_identity_t<T>& xi_alpha,
                  const std::type_identity_t<T>& xi_beta, Rule rule) {
  const auto I = Mat<T>::identity(B.rows());
  T c_inv, c_dir;  // coefficients of B in the inverted / direct factor
  if (rule == Rule::Backward) {
    c_inv = xi_alpha;
    c_dir = xi_beta;
  } else {
    if (detail::scalar_ops<T>::is_zero(xi_alpha) ||
        detail::scalar_ops<T>::is_zero(xi_beta))
      throw DomainError("drop-push scattering needs nonzero spectral parameters");
    c_inv = T(1) / xi_beta;
    c_dir = T(1) / xi_alpha;
  }
  Mat<T> resolvent = I - B.scaled(c_inv);
  Mat<T> inv;
  try {
    inv = inverse(resolvent);
  } catch (const SingularMatrixError&) {
    const T& offending = (rule == Rule::Backward) ? xi_alpha : xi_beta;
    throw SingularResolventError("singular resolvent at spectral parameter " +
                                 detail::scalar_repr(offending) + " (" +
                                 rule_name(rule) + ")");
  }
  return -(inv * (I - B.scaled(c_dir)));
}

inline RMat scattering(const InteractionMatrix& B, const Rational& xi_alpha,
                       const Rational& xi_beta, Rule rule) {
  return scattering(B.entries, xi_alpha, xi_beta, rule);
}

inline CMat scattering(const InteractionMatrix& B, const Complex& xi_alpha,
                       const Complex& xi_beta, Rule rule) {
  return scattering(to_complex(B.entries), xi_alpha, xi_beta, rule);
}

// S(r) = -(1 - r xi_beta) / (1 - r xi_alpha)
template <typename T>
T closed_form_S(const std::type_identity_t<T>& r, const T& xi_alpha,
                const std::type_identity_t<T>& xi_beta) {
  T den = T(1) - r * xi_alpha;
  if (detail::scalar_ops<T>::is_zero(den))
    throw DivisionByZeroError("closed_form_S: factor 1 - r*xi_alpha vanishes");
  return -(T(1) - r * xi_beta) / den;
}

// T(r) = r (xi_beta - xi_alpha) / ((1 - xi_alpha)(1 - (1-r) xi_alpha))
template <typename T>
T closed_form_T(const std::type_identity_t<T>& r, const T& xi_alpha,
                const std::type_identity_t<T>& xi_beta) {
  T f1 = T(1) - xi_alpha;
  if (detail::scalar_ops<T>::is_zero(f1))
    throw DivisionByZeroError("closed_form_T: factor 1 - xi_alpha vanishes");
  T f2 = T(1) - (T(1) - r) * xi_alpha;
  if (detail::scalar_ops<T>::is_zero(f2))
    throw DivisionByZeroError("closed_form_T: factor 1 - (1-r)*xi_alpha vanishes");
  return r * (xi_beta - xi_alpha) / (f1 * f2);
}

// Closed-form scattering matrix of the two-parameter infection family
// (backward rule): diagonal S weights and conversion T weights into the
// dominant species. Agrees entrywise with the resolvent construction.
template <typename T>
Mat<T> param_closed_form_R(int N, const std::type_identity_t<T>& lambda,
                           const std::type_identity_t<T>& lambda_prime,
                           const T& xi_alpha,
                           const std::type_identity_t<T>& xi_beta) {
  const std::size_t dim = pow_sz(N, 2);
  Mat<T> R(dim, dim);
  const T one(1);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      std::size_t col = pair_rank(a, b, N);
      if (a == b) {
        R(col, col) = closed_form_S(one, xi_alpha, xi_beta);
      } else if (a < b) {
        R(col, col) = closed_form_S(lambda, xi_alpha, xi_beta);
        R(pair_rank(b, b, N), col) = closed_form_T(one - lambda, xi_alpha, xi_beta);
      } else {
        R(col, col) = closed_form_S(lambda_prime, xi_alpha, xi_beta);
        R(pair_rank(a, a, N), col) =
            closed_form_T(one - lambda_prime, xi_alpha, xi_beta);
      }
    }
  return R;
}

// Scattering matrix of the convex mixture a*I + b*B with a+b=1, written
// as a rescaled and reparameterized form of the plain construction:
//   -(1-a xi_beta)/(1-a xi_alpha) (I - b xi_alpha/(1-a xi_alpha) B)^{-1}
//                                 (I - b xi_beta /(1-a xi_beta ) B).
// Equals scattering(aI + bB, xi_alpha, xi_beta, Backward).
template <typename T>
Mat<T> rescaled_scattering(const std::type_identity_t<T>& a,
                           const std::type_identity_t<T>& b, const Mat<T>& B,
                           const std::type_identity_t<T>& xi_alpha,
                           const std::type_identity_t<T>& xi_beta) {
  if (!detail::scalar_ops<T>::is_zero(a + b - T(1)))
    throw DomainError("rescaled_scattering requires a + b = 1");
  T da = T(1) - a * xi_alpha;
  T db = T(1) - a * xi_beta;
  if (detail::scalar_ops<T>::is_zero(da))
    throw DivisionByZeroError("rescaled_scattering: factor 1 - a*xi_alpha vanishes");
  if (detail::scalar_ops<T>::is_zero(db))
    throw DivisionByZeroError("rescaled_scattering: factor 1 - a*xi_beta vanishes");
  const auto I = Mat<T>::identity(B.rows());
  Mat<T> left = I - B.scaled(b * xi_alpha / da);
  Mat<T> right = I - B.scaled(b * xi_beta / db);
  Mat<T> inv;
  try {
    inv = inverse(left);
  } catch (const SingularMatrixError&) {
    throw SingularResolventError(
        "rescaled_scattering: singular resolvent at spectral parameter " +
        detail::scalar_repr(xi_alpha));
  }
  return (inv * right).scaled(-(db / da));
}

// T_{i,beta alpha}: the scattering matrix acting on word slots i, i+1 of
// an n-slot space. Delegates to embed_at_site.
template <typename T>
Mat<T> embed_T(const Mat<T>& R, int i, int n, int N) {
  return embed_at_site(R, i, n, N);
}

}  // namespace mtasep
