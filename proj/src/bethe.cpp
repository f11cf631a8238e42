#include "mtasep/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mtasep/species.hpp"

namespace mtasep {

namespace {

void require_strictly_increasing(const std::vector<long>& v, const char* what) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] >= v[i])
      throw DomainError(std::string(what) + " must be strictly increasing");
}

// Permutation DAG: each non-identity permutation is reached from a
// predecessor by one ascent swap; amplitudes follow the same edges.
struct PermDag {
  std::vector<Permutation> perms;  // perms[0] = identity, BFS order
  struct Edge {
    std::size_t parent;
    int letter;  // 1-based slot
    int alpha, beta;  // values swapped: (..alpha beta..) -> (..beta alpha..)
  };
  std::vector<Edge> edges;  // edges[k-1] builds perms[k]
};

PermDag build_perm_dag(int n) {
  PermDag dag;
  dag.perms.push_back(identity_permutation(n));
  std::map<Permutation, std::size_t> index{{dag.perms[0], 0}};
  for (std::size_t cur = 0; cur < dag.perms.size(); ++cur) {
    Permutation w = dag.perms[cur];
    for (int i = 1; i < n; ++i) {
      if (w[i - 1] >= w[i]) continue;  // only ascents extend reduced words
      Permutation child = apply_letter(w, i);
      if (index.count(child)) continue;
      index.emplace(child, dag.perms.size());
      dag.perms.push_back(child);
      dag.edges.push_back({cur, i, w[i - 1], w[i]});
    }
  }
  return dag;
}

double abs_det(CMat m) {
  const std::size_t n = m.rows();
  double logabs = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(p, k))) p = i;
    if (std::abs(m(p, k)) == 0.0) return 0.0;
    if (p != k)
      for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(p, j));
    logabs += std::log(std::abs(m(k, k)));
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return std::exp(logabs);
}

}  // namespace

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  return p;
}

std::vector<Permutation> all_permutations(int n) {
  Permutation p = identity_permutation(n);
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int inversion_count(const Permutation& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++c;
  return c;
}

Permutation apply_letter(Permutation p, int i) {
  if (i < 1 || static_cast<std::size_t>(i) >= p.size())
    throw DomainError("transposition index out of range");
  std::swap(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
  return p;
}

Permutation apply_word(const Permutation& start, std::span<const int> word) {
  Permutation p = start;
  for (int i : word) p = apply_letter(std::move(p), i);
  return p;
}

namespace {
void reduced_words_rec(const Permutation& w, std::vector<int>& suffix,
                       std::vector<std::vector<int>>& out, std::size_t max_count) {
  if (out.size() >= max_count) return;
  bool any_descent = false;
  for (int i = 1; i < static_cast<int>(w.size()); ++i) {
    if (w[static_cast<std::size_t>(i - 1)] <= w[static_cast<std::size_t>(i)]) continue;
    any_descent = true;
    // removing the descent peels the word's last letter
    Permutation prev = apply_letter(w, i);
    suffix.push_back(i);
    reduced_words_rec(prev, suffix, out, max_count);
    suffix.pop_back();
    if (out.size() >= max_count) return;
  }
  if (!any_descent) {  // identity reached; suffix holds letters last-first
    std::vector<int> word(suffix.rbegin(), suffix.rend());
    out.push_back(std::move(word));
  }
}
}  // namespace

std::vector<std::vector<int>> reduced_words(const Permutation& sigma,
                                            std::size_t max_count) {
  std::vector<std::vector<int>> out;
  std::vector<int> suffix;
  reduced_words_rec(sigma, suffix, out, max_count);
  return out;
}

std::vector<std::vector<int>> all_reduced_words(const Permutation& sigma) {
  return reduced_words(sigma, static_cast<std::size_t>(-1));
}

Complex energy(const Complex& xi) { return Complex(1.0, 0.0) / xi - Complex(1.0, 0.0); }

Rational energy(const Rational& xi) {
  if (is_zero(xi)) throw DivisionByZeroError("energy at xi = 0");
  return Rational(1) / xi - 1;
}

template <typename T>
Mat<T> amplitude_from_word(std::span<const int> word, const Mat<T>& B, int N,
                           std::span<const std::type_identity_t<T>> xi, Rule rule) {
  const int n = static_cast<int>(xi.size());
  const std::size_t dim = pow_sz(N, n);
  Mat<T> A = Mat<T>::identity(dim);
  Permutation w = identity_permutation(n);
  for (int letter : word) {
    if (letter < 1 || letter > n - 1)
      throw DomainError("word letter out of range 1..n-1");
    const int alpha = w[static_cast<std::size_t>(letter - 1)];
    const int beta = w[static_cast<std::size_t>(letter)];
    Mat<T> R = scattering(B, xi[static_cast<std::size_t>(alpha - 1)],
                          xi[static_cast<std::size_t>(beta - 1)], rule);
    A = embed_T(R, letter, n, N) * A;
    w = apply_letter(std::move(w), letter);
  }
  return A;
}

template <typename T>
Mat<T> amplitude(const Permutation& sigma, const Mat<T>& B, int N,
                 std::span<const std::type_identity_t<T>> xi, Rule rule) {
  auto words = reduced_words(sigma, 1);
  return amplitude_from_word<T>(words.at(0), B, N, xi, rule);
}

template <typename T>
std::map<Permutation, Mat<T>> all_amplitudes(int n, const Mat<T>& B, int N,
                                             std::span<const std::type_identity_t<T>> xi, Rule rule) {
  PermDag dag = build_perm_dag(n);
  std::map<std::pair<int, int>, Mat<T>> rcache;
  std::vector<Mat<T>> amps;
  amps.reserve(dag.perms.size());
  amps.push_back(Mat<T>::identity(pow_sz(N, n)));
  for (std::size_t k = 1; k < dag.perms.size(); ++k) {
    const auto& e = dag.edges[k - 1];
    auto key = std::make_pair(e.alpha, e.beta);
    auto it = rcache.find(key);
    if (it == rcache.end()) {
      Mat<T> R = scattering(B, xi[static_cast<std::size_t>(e.alpha - 1)],
                            xi[static_cast<std::size_t>(e.beta - 1)], rule);
      it = rcache.emplace(key, std::move(R)).first;
    }
    amps.push_back(embed_T(it->second, e.letter, n, N) * amps[e.parent]);
  }
  std::map<Permutation, Mat<T>> out;
  for (std::size_t k = 0; k < dag.perms.size(); ++k)
    out.emplace(dag.perms[k], std::move(amps[k]));
  return out;
}

template RMat amplitude_from_word<Rational>(std::span<const int>, const RMat&, int,
                                            std::span<const Rational>, Rule);
template CMat amplitude_from_word<Complex>(std::span<const int>, const CMat&, int,
                                           std::span<const Complex>, Rule);
template RMat amplitude<Rational>(const Permutation&, const RMat&, int,
                                  std::span<const Rational>, Rule);
template CMat amplitude<Complex>(const Permutation&, const CMat&, int,
                                 std::span<const Complex>, Rule);
template std::map<Permutation, RMat> all_amplitudes<Rational>(
    int, const RMat&, int, std::span<const Rational>, Rule);
template std::map<Permutation, CMat> all_amplitudes<Complex>(
    int, const CMat&, int, std::span<const Complex>, Rule);

RMat ansatz_exact(const std::vector<long>& x,
                  const std::map<Permutation, RMat>& amplitudes,
                  std::span<const Rational> xi) {
  const std::size_t n = x.size();
  RMat U;
  bool first = true;
  for (const auto& [w, A] : amplitudes) {
    Rational coef(1);
    for (std::size_t i = 0; i < n; ++i)
      coef *= pow_int(xi[static_cast<std::size_t>(w[i] - 1)], x[i]);
    if (first) {
      U = A.scaled(coef);
      first = false;
    } else {
      U = U + A.scaled(coef);
    }
  }
  return U;
}

CMat ansatz_complex(const std::vector<long>& x, double t,
                    const std::map<Permutation, CMat>& amplitudes,
                    std::span<const Complex> xi) {
  const std::size_t n = x.size();
  Complex esum(0.0, 0.0);
  for (const auto& v : xi) esum += energy(v);
  const Complex factor = std::exp(esum * t);
  CMat U;
  bool first = true;
  for (const auto& [w, A] : amplitudes) {
    Complex coef = factor;
    for (std::size_t i = 0; i < n; ++i)
      coef *= pow_int(xi[static_cast<std::size_t>(w[i] - 1)], x[i]);
    if (first) {
      U = A.scaled(coef);
      first = false;
    } else {
      U = U + A.scaled(coef);
    }
  }
  return U;
}

Rational boundary_residual_exact(const InteractionMatrix& B, Rule rule,
                                 std::span<const Rational> xi,
                                 const std::vector<long>& collapsed, int slot) {
  const int n = static_cast<int>(xi.size());
  if (static_cast<int>(collapsed.size()) != n)
    throw DomainError("configuration size mismatch");
  if (slot < 1 || slot > n - 1) throw DomainError("boundary slot out of range");
  if (collapsed[static_cast<std::size_t>(slot - 1)] !=
      collapsed[static_cast<std::size_t>(slot)])
    throw DomainError("collapsed configuration must repeat x_i at slot i+1");
  auto amps = all_amplitudes<Rational>(n, B.entries, B.N, xi, rule);
  RMat lhs = ansatz_exact(collapsed, amps, xi);
  std::vector<long> other = collapsed;
  if (rule == Rule::Backward)
    other[static_cast<std::size_t>(slot)] += 1;
  else
    other[static_cast<std::size_t>(slot - 1)] -= 1;
  RMat rhs = embed_at_site(B.entries, slot, n, B.N) * ansatz_exact(other, amps, xi);
  return max_abs(lhs - rhs);
}

double boundary_residual_float(const InteractionMatrix& B, Rule rule,
                               std::span<const Complex> xi, double t,
                               const std::vector<long>& collapsed, int slot) {
  const int n = static_cast<int>(xi.size());
  if (static_cast<int>(collapsed.size()) != n)
    throw DomainError("configuration size mismatch");
  if (slot < 1 || slot > n - 1) throw DomainError("boundary slot out of range");
  CMat Bc = to_complex(B.entries);
  auto amps = all_amplitudes<Complex>(n, Bc, B.N, xi, rule);
  CMat lhs = ansatz_complex(collapsed, t, amps, xi);
  std::vector<long> other = collapsed;
  if (rule == Rule::Backward)
    other[static_cast<std::size_t>(slot)] += 1;
  else
    other[static_cast<std::size_t>(slot - 1)] -= 1;
  CMat rhs = embed_at_site(Bc, slot, n, B.N) * ansatz_complex(other, t, amps, xi);
  return max_abs(lhs - rhs);
}

QuadratureSpec default_quadrature(Rule rule) {
  return rule == Rule::Backward ? QuadratureSpec{0.5, 64} : QuadratureSpec{1.25, 128};
}

void contour_pole_scan(const CMat& B, Rule rule, double radius, int probes,
                       double tol) {
  if (radius <= 0.0) throw DomainError("contour radius must be positive");
  for (int k = 0; k < probes; ++k) {
    double theta = 2.0 * std::numbers::pi * k / probes;
    Complex xi = std::polar(radius, theta);
    Complex c = (rule == Rule::Backward) ? xi : Complex(1.0, 0.0) / xi;
    CMat m = CMat::identity(B.rows()) - B.scaled(c);
    if (abs_det(m) < tol)
      throw PoleOnContourError("resolvent pole on contour of radius " +
                               std::to_string(radius) + " near angle " +
                               std::to_string(theta));
  }
}

namespace {

struct NodeGrid {
  std::vector<Complex> nodes;
  std::vector<Complex> energy_factor;           // exp(energy(node) * t)
  long emin = 0;
  std::vector<std::vector<Complex>> powers;     // powers[m][e - emin]
  std::vector<std::vector<CMat>> rpair;         // rpair[a][b], n >= 2 only
};

NodeGrid build_node_grid(const CMat& B, Rule rule, double t,
                         const QuadratureSpec& quad, long emin, long emax,
                         bool need_pairs) {
  NodeGrid g;
  const int M = quad.nodes;
  g.nodes.resize(static_cast<std::size_t>(M));
  g.energy_factor.resize(static_cast<std::size_t>(M));
  g.emin = emin;
  g.powers.resize(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    Complex xi = std::polar(quad.radius, 2.0 * std::numbers::pi * m / M);
    g.nodes[static_cast<std::size_t>(m)] = xi;
    g.energy_factor[static_cast<std::size_t>(m)] = std::exp(energy(xi) * t);
    auto& p = g.powers[static_cast<std::size_t>(m)];
    p.resize(static_cast<std::size_t>(emax - emin + 1));
    for (long e = emin; e <= emax; ++e)
      p[static_cast<std::size_t>(e - emin)] = pow_int(xi, e);
  }
  if (need_pairs) {
    g.rpair.resize(static_cast<std::size_t>(M));
    for (int a = 0; a < M; ++a) {
      g.rpair[static_cast<std::size_t>(a)].reserve(static_cast<std::size_t>(M));
      for (int b = 0; b < M; ++b)
        g.rpair[static_cast<std::size_t>(a)].push_back(
            scattering(B, g.nodes[static_cast<std::size_t>(a)],
                       g.nodes[static_cast<std::size_t>(b)], rule));
    }
  }
  return g;
}

void accumulate_scaled(CMat& acc, const CMat& m, const Complex& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Complex& v = m(i, j);
      if (v.real() == 0.0 && v.imag() == 0.0) continue;
      acc(i, j) += s * v;
    }
}

}  // namespace

std::vector<TransitionKernel> kernel_batch(const InteractionMatrix& B, Rule rule,
                                           const std::vector<long>& Y,
                                           const std::vector<std::vector<long>>& Xs,
                                           double t, QuadratureSpec quad) {
  const int n = static_cast<int>(Y.size());
  if (n < 1) throw DomainError("kernel needs at least one particle");
  if (t < 0.0) throw DomainError("kernel time must be nonnegative");
  if (quad.nodes < 2) throw DomainError("quadrature needs at least two nodes");
  require_strictly_increasing(Y, "Y");
  for (const auto& X : Xs) {
    if (X.size() != Y.size()) throw DomainError("X and Y sizes differ");
    require_strictly_increasing(X, "X");
  }
  const int N = B.N;
  const std::size_t dim = pow_sz(N, n);
  const CMat Bc = to_complex(B.entries);
  contour_pole_scan(Bc, rule, quad.radius);

  long emin = 0, emax = 0;
  bool first_e = true;
  for (const auto& X : Xs)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long e = X[static_cast<std::size_t>(i)] - Y[static_cast<std::size_t>(j)] - 1;
        if (first_e) {
          emin = emax = e;
          first_e = false;
        } else {
          emin = std::min(emin, e);
          emax = std::max(emax, e);
        }
      }
  if (first_e) return {};

  const NodeGrid grid = build_node_grid(Bc, rule, t, quad, emin, emax, n >= 2);
  const PermDag dag = build_perm_dag(n);
  const int M = quad.nodes;
  const double norm = 1.0 / std::pow(static_cast<double>(M), n);

  std::vector<CMat> results(Xs.size(), CMat(dim, dim));

  std::vector<int> tuple(static_cast<std::size_t>(n), 0);
  std::vector<Mat<Complex>> amps(dag.perms.size());
  const CMat ident = CMat::identity(dim);
  for (;;) {
    // weight: jacobian xi_m / M per circle, times the symmetric energy factor
    Complex weight(norm, 0.0);
    for (int j = 0; j < n; ++j) {
      const auto m = static_cast<std::size_t>(tuple[static_cast<std::size_t>(j)]);
      weight *= grid.nodes[m] * grid.energy_factor[m];
    }

    amps[0] = ident;
    for (std::size_t k = 1; k < dag.perms.size(); ++k) {
      const auto& e = dag.edges[k - 1];
      const auto ma = static_cast<std::size_t>(tuple[static_cast<std::size_t>(e.alpha - 1)]);
      const auto mb = static_cast<std::size_t>(tuple[static_cast<std::size_t>(e.beta - 1)]);
      const CMat& R = grid.rpair[ma][mb];
      amps[k] = (n == 2) ? R * amps[e.parent]
                         : embed_T(R, e.letter, n, N) * amps[e.parent];
    }

    for (std::size_t xi_idx = 0; xi_idx < Xs.size(); ++xi_idx) {
      const auto& X = Xs[xi_idx];
      for (std::size_t k = 0; k < dag.perms.size(); ++k) {
        const auto& w = dag.perms[k];
        Complex coef = weight;
        for (int i = 0; i < n; ++i) {
          const auto var = static_cast<std::size_t>(w[static_cast<std::size_t>(i)] - 1);
          const auto m = static_cast<std::size_t>(tuple[var]);
          long e = X[static_cast<std::size_t>(i)] -
                   Y[static_cast<std::size_t>(w[static_cast<std::size_t>(i)] - 1)] - 1;
          coef *= grid.powers[m][static_cast<std::size_t>(e - grid.emin)];
        }
        accumulate_scaled(results[xi_idx], amps[k], coef);
      }
    }

    // next lexicographic tuple
    int pos = n - 1;
    while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == M) {
      tuple[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }

  std::vector<TransitionKernel> out;
  out.reserve(Xs.size());
  for (std::size_t k = 0; k < Xs.size(); ++k) {
    TransitionKernel tk;
    tk.X = Xs[k];
    tk.Y = Y;
    tk.t = t;
    tk.rule = rule;
    tk.matrix_label = B.provenance;
    tk.N = N;
    tk.n = n;
    tk.quad = quad;
    double mi = 0.0;
    for (const auto& v : results[k].data()) mi = std::max(mi, std::abs(v.imag()));
    tk.max_imag = mi;
    tk.matrix = std::move(results[k]);
    out.push_back(std::move(tk));
  }
  return out;
}

TransitionKernel kernel(const InteractionMatrix& B, Rule rule,
                        const std::vector<long>& Y, const std::vector<long>& X,
                        double t, QuadratureSpec quad) {
  return kernel_batch(B, rule, Y, {X}, t, quad).at(0);
}

TransitionKernel kernel_converged(const InteractionMatrix& B, Rule rule,
                                  const std::vector<long>& Y,
                                  const std::vector<long>& X, double t,
                                  QuadratureSpec initial, double tol,
                                  int max_nodes) {
  TransitionKernel prev = kernel(B, rule, Y, X, t, initial);
  while (initial.nodes * 2 <= max_nodes) {
    initial.nodes *= 2;
    TransitionKernel next = kernel(B, rule, Y, X, t, initial);
    if (max_abs_diff(prev.matrix, next.matrix) <= tol) return next;
    prev = std::move(next);
  }
  throw QuadratureError("kernel quadrature did not stabilize within " +
                        std::to_string(max_nodes) + " nodes");
}

std::vector<std::vector<long>> reachable_window(const std::vector<long>& Y,
                                                double t) {
  require_strictly_increasing(Y, "Y");
  const int n = static_cast<int>(Y.size());
  const long lo = Y.front() - 1;
  const long hi = Y.back() + static_cast<long>(std::ceil(t)) * 20 + 10;
  std::vector<std::vector<long>> out;
  std::vector<long> cur(static_cast<std::size_t>(n));
  // enumerate strictly increasing tuples in [lo, hi]
  auto rec = [&](auto&& self, int idx, long start) -> void {
    if (idx == n) {
      out.push_back(cur);
      return;
    }
    for (long v = start; v <= hi - (n - 1 - idx); ++v) {
      cur[static_cast<std::size_t>(idx)] = v;
      self(self, idx + 1, v + 1);
    }
  };
  rec(rec, 0, lo);
  return out;
}

std::vector<double> conservation_totals(const InteractionMatrix& B, Rule rule,
                                        const std::vector<long>& Y, double t,
                                        QuadratureSpec quad) {
  auto window = reachable_window(Y, t);
  auto kernels = kernel_batch(B, rule, Y, window, t, quad);
  const std::size_t dim = pow_sz(B.N, static_cast<int>(Y.size()));
  std::vector<double> totals(dim, 0.0);
  for (const auto& tk : kernels)
    for (std::size_t col = 0; col < dim; ++col)
      for (std::size_t row = 0; row < dim; ++row)
        totals[col] += tk.matrix(row, col).real();
  return totals;
}

double master_equation_residual(const InteractionMatrix& B, Rule rule,
                                const std::vector<long>& Y,
                                const std::vector<long>& X, double t, double h,
                                QuadratureSpec quad) {
  if (!(t > h && h > 0.0)) throw DomainError("need t > h > 0");
  const int n = static_cast<int>(X.size());
  if (rule == Rule::DropPush && n > 2)
    throw DomainError("drop-push master residual supports n <= 2");
  const std::size_t dim = pow_sz(B.N, n);

  CMat deriv = (kernel(B, rule, Y, X, t + h, quad).matrix -
                kernel(B, rule, Y, X, t - h, quad).matrix)
                   .scaled(Complex(1.0 / (2.0 * h), 0.0));

  CMat rhs(dim, dim);
  const CMat Kt = kernel(B, rule, Y, X, t, quad).matrix;
  for (int i = 0; i < n; ++i) {
    std::vector<long> shifted = X;
    shifted[static_cast<std::size_t>(i)] -= 1;
    const bool collides =
        i > 0 && shifted[static_cast<std::size_t>(i)] == X[static_cast<std::size_t>(i - 1)];
    if (!collides) {
      rhs = rhs + kernel(B, rule, Y, shifted, t, quad).matrix;
      continue;
    }
    // site x_i - 1 occupied: the pair (i-1, i) interacts
    const CMat Bi = embed_at_site(to_complex(B.entries), i, n, B.N);
    if (rule == Rule::Backward) {
      rhs = rhs + Bi * Kt;
    } else {
      std::vector<long> back = X;
      back[static_cast<std::size_t>(i - 1)] -= 1;
      back[static_cast<std::size_t>(i)] -= 1;
      rhs = rhs + Bi * kernel(B, rule, Y, back, t, quad).matrix;
    }
  }
  rhs = rhs - Kt.scaled(Complex(static_cast<double>(n), 0.0));
  return max_abs_diff(deriv, rhs);
}

}  // namespace mtasep
