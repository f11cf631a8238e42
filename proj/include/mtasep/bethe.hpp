#pragma once

#include <cstdint>
#include <type_traits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "mtasep/catalog.hpp"
#include "mtasep/matrix.hpp"
#include "mtasep/scattering.hpp"

namespace mtasep {

// Permutations are one-line words over 1..n. A reduced word is a minimal
// sequence of adjacent-position swaps building the permutation from the
// identity; its length equals the inversion count.
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
std::vector<Permutation> all_permutations(int n);
int inversion_count(const Permutation& p);
Permutation apply_letter(Permutation p, int i);  // swap slots i, i+1 (1-based)
Permutation apply_word(const Permutation& start, std::span<const int> word);

// Up to max_count distinct reduced words (deterministic order). The
// identity yields one empty word.
std::vector<std::vector<int>> reduced_words(const Permutation& sigma,
                                            std::size_t max_count);
std::vector<std::vector<int>> all_reduced_words(const Permutation& sigma);

// epsilon(xi) = 1/xi - 1
Complex energy(const Complex& xi);
Rational energy(const Rational& xi);

// Amplitude matrix A_sigma: the ordered product of embedded scattering
// matrices along a word, tracking which value pair each swap exchanges
// in the evolving permutation. Spectral parameters must be admissible
// for every factor.
template <typename T>
Mat<T> amplitude_from_word(std::span<const int> word, const Mat<T>& B, int N,
                           std::span<const std::type_identity_t<T>> xi, Rule rule);

template <typename T>
Mat<T> amplitude(const Permutation& sigma, const Mat<T>& B, int N,
                 std::span<const std::type_identity_t<T>> xi, Rule rule);

// A_sigma for every sigma in S_n, built by extending along ascents so
// each matrix is one embedded product away from an earlier one.
template <typename T>
std::map<Permutation, Mat<T>> all_amplitudes(int n, const Mat<T>& B, int N,
                                             std::span<const std::type_identity_t<T>> xi, Rule rule);

// The ansatz sum U(x;t) = sum_sigma A_sigma prod_i xi_{sigma(i)}^{x_i}
// times the symmetric factor exp(sum_i energy(xi_i) t). Exact overload
// is the t = 0 evaluation (factor 1).
RMat ansatz_exact(const std::vector<long>& x,
                  const std::map<Permutation, RMat>& amplitudes,
                  std::span<const Rational> xi);
CMat ansatz_complex(const std::vector<long>& x, double t,
                    const std::map<Permutation, CMat>& amplitudes,
                    std::span<const Complex> xi);

// Max |entry| violation of the boundary condition at slot i (1-based):
//   Backward:  U(..., x_i, x_i, ...) = B_i U(..., x_i, x_i+1, ...)
//   DropPush:  U(..., x_i, x_i, ...) = B_i U(..., x_i-1, x_i, ...)
// `collapsed` holds the left-hand configuration (x_i repeated at i+1).
Rational boundary_residual_exact(const InteractionMatrix& B, Rule rule,
                                 std::span<const Rational> xi,
                                 const std::vector<long>& collapsed, int slot);
double boundary_residual_float(const InteractionMatrix& B, Rule rule,
                               std::span<const Complex> xi, double t,
                               const std::vector<long>& collapsed, int slot);

// ---- transition kernels by contour quadrature ----

struct QuadratureSpec {
  double radius = 0.5;
  int nodes = 64;
};

// Paper-backed default for the backward rule (inside the unit circle);
// the drop-push contour must enclose the interaction matrix's
// eigenvalues, which lie in [0,1] for the integrable constructions.
QuadratureSpec default_quadrature(Rule rule);

struct TransitionKernel {
  std::vector<long> X, Y;
  double t = 0.0;
  Rule rule = Rule::Backward;
  std::string matrix_label;
  int N = 2;
  int n = 1;
  CMat matrix;       // N^n x N^n, rows pi, columns nu
  double max_imag = 0.0;  // quadrature-noise diagnostic
  QuadratureSpec quad;
};

// Scans det(I - c(xi) B) on the contour; throws PoleOnContourError when a
// resolvent pole (numerically) touches the circle.
void contour_pole_scan(const CMat& B, Rule rule, double radius,
                       int probes = 720, double tol = 1e-9);

TransitionKernel kernel(const InteractionMatrix& B, Rule rule,
                        const std::vector<long>& Y, const std::vector<long>& X,
                        double t, QuadratureSpec quad);

// Same initial data, many final position vectors; node-grid work is shared.
std::vector<TransitionKernel> kernel_batch(const InteractionMatrix& B, Rule rule,
                                           const std::vector<long>& Y,
                                           const std::vector<std::vector<long>>& Xs,
                                           double t, QuadratureSpec quad);

// Doubles the node count until no entry moves more than tol; throws
// QuadratureError if max_nodes is reached first.
TransitionKernel kernel_converged(const InteractionMatrix& B, Rule rule,
                                  const std::vector<long>& Y,
                                  const std::vector<long>& X, double t,
                                  QuadratureSpec initial, double tol = 1e-10,
                                  int max_nodes = 1024);

// All strictly increasing position vectors reachable from Y by time t,
// truncated to the window [min(Y)-1, max(Y) + ceil(t)*20 + 10].
std::vector<std::vector<long>> reachable_window(const std::vector<long>& Y,
                                                double t);

// Sum over the window of all kernel entries, per initial column nu.
// Each total is 1 up to truncation and quadrature error.
std::vector<double> conservation_totals(const InteractionMatrix& B, Rule rule,
                                        const std::vector<long>& Y, double t,
                                        QuadratureSpec quad);

// Central-difference residual of the master equation at configuration X:
// separated particles gain shift terms, adjacent pairs interaction terms.
// Backward supports any n; drop-push supports n <= 2.
double master_equation_residual(const InteractionMatrix& B, Rule rule,
                                const std::vector<long>& Y,
                                const std::vector<long>& X, double t, double h,
                                QuadratureSpec quad);

}  // namespace mtasep
