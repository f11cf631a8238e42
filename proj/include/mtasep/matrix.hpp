#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "mtasep/errors.hpp"
#include "mtasep/rational.hpp"

namespace mtasep {

namespace detail {

template <typename T>
struct scalar_ops;

template <>
struct scalar_ops<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  // Pivot preference: larger magnitude first (full pivoting scans the
  // whole remaining submatrix with this ordering).
  static bool better_pivot(const Rational& candidate, const Rational& best) {
    return cmpabs(candidate, best) > 0;
  }
  static bool acceptable_pivot(const Rational& p, double) {
    return sgn(p) != 0;
  }
  static int cmpabs(const Rational& a, const Rational& b) {
    const Rational aa = abs(a), bb = abs(b);
    return cmp(aa, bb);
  }
};

template <>
struct scalar_ops<Complex> {
  static constexpr bool exact = false;
  static bool is_zero(const Complex& x) {
    return x.real() == 0.0 && x.imag() == 0.0;
  }
  static bool better_pivot(const Complex& candidate, const Complex& best) {
    return std::abs(candidate) > std::abs(best);
  }
  static bool acceptable_pivot(const Complex& p, double threshold) {
    return std::abs(p) >= threshold;
  }
};

}  // namespace detail

// Dense row-major matrix over an exact-rational or complex-double scalar.
// Values are immutable in practice: every operation returns a new matrix.
template <typename T>
class Mat {
 public:
  Mat() : rows_(0), cols_(0) {}
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<T>& data() const { return data_; }

  Mat operator+(const Mat& o) const {
    require_same_shape(o);
    Mat r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
  }

  Mat operator-(const Mat& o) const {
    require_same_shape(o);
    Mat r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
  }

  Mat operator-() const {
    Mat r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
    return r;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix product shape mismatch");
    Mat r(rows_, o.cols_);
    // Skip exact zeros; embedded Kronecker factors are mostly zero.
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = data_[i * cols_ + k];
        if (detail::scalar_ops<T>::is_zero(a)) continue;
        const T* brow = &o.data_[k * o.cols_];
        T* rrow = &r.data_[i * o.cols_];
        for (std::size_t j = 0; j < o.cols_; ++j) rrow[j] += a * brow[j];
      }
    }
    return r;
  }

  Mat scaled(const T& s) const {
    Mat r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = s * data_[k];
    return r;
  }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  void require_same_shape(const Mat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DomainError("matrix shape mismatch");
  }

  std::size_t rows_, cols_;
  std::vector<T> data_;
};

using RMat = Mat<Rational>;
using CMat = Mat<Complex>;

// Kronecker product with lexicographic index pairing: the entry at row
// (i1,i2), column (j1,j2) is a(i1,j1) * b(i2,j2).
template <typename T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const T& av = a(i1, j1);
      if (detail::scalar_ops<T>::is_zero(av)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          r(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b(i2, j2);
    }
  return r;
}

// I^{(i-1)} (x) r (x) I^{(n-i-1)} for an N^2 x N^2 matrix r acting on
// adjacent slots i, i+1 of an n-slot word space (i is 1-based).
template <typename T>
Mat<T> embed_at_site(const Mat<T>& r, int i, int n, int N) {
  if (n < 2) throw DomainError("embed_at_site needs at least two slots");
  if (i < 1 || i > n - 1) throw DomainError("embed_at_site: site index out of range");
  const std::size_t nn = static_cast<std::size_t>(N) * N;
  if (r.rows() != nn || r.cols() != nn)
    throw DomainError("embed_at_site: matrix is not N^2 x N^2");
  std::size_t left = 1, right = 1;
  for (int k = 0; k < i - 1; ++k) left *= N;
  for (int k = 0; k < n - i - 1; ++k) right *= N;
  Mat<T> result = r;
  if (left > 1) result = kron(Mat<T>::identity(left), result);
  if (right > 1) result = kron(result, Mat<T>::identity(right));
  return result;
}

struct InverseOptions {
  double pivot_threshold = 1e-12;  // float path only
};

// Gauss-Jordan inverse. Rational: full pivoting (exact); complex:
// partial pivoting with a magnitude threshold.
template <typename T>
Mat<T> inverse(const Mat<T>& a, const InverseOptions& opts = {}) {
  if (!a.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Mat<T> m = a;
  Mat<T> inv = Mat<T>::identity(n);
  std::vector<std::size_t> col_of(n);  // original column at slot k
  for (std::size_t k = 0; k < n; ++k) col_of[k] = k;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    if constexpr (detail::scalar_ops<T>::exact) {
      // full pivoting over the remaining submatrix
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (detail::scalar_ops<T>::better_pivot(m(i, j), m(pr, pc))) {
            pr = i;
            pc = j;
          }
    } else {
      for (std::size_t i = k + 1; i < n; ++i)
        if (detail::scalar_ops<T>::better_pivot(m(i, k), m(pr, k))) pr = i;
    }
    if (!detail::scalar_ops<T>::acceptable_pivot(m(pr, pc), opts.pivot_threshold))
      throw SingularMatrixError("singular matrix: no usable pivot at step " +
                                std::to_string(k));
    if (pr != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(k, j), m(pr, j));
        std::swap(inv(k, j), inv(pr, j));
      }
    }
    if (pc != k) {
      for (std::size_t i = 0; i < n; ++i) std::swap(m(i, k), m(i, pc));
      std::swap(col_of[k], col_of[pc]);
    }
    T piv = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) = m(k, j) / piv;
      inv(k, j) = inv(k, j) / piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      T f = m(i, k);
      if (detail::scalar_ops<T>::is_zero(f)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  // Column swaps computed (A Q)^{-1}; undo them: row col_of[k] of A^{-1}
  // is row k of the reduced inverse.
  Mat<T> out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out(col_of[k], j) = inv(k, j);
  return out;
}

inline double max_abs(const CMat& a) {
  double m = 0.0;
  for (const auto& v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// Largest |entry| of a rational matrix (exact).
inline Rational max_abs(const RMat& a) {
  Rational m(0);
  for (const auto& v : a.data())
    if (detail::scalar_ops<Rational>::cmpabs(v, m) > 0) m = abs(v);
  return m;
}

inline CMat to_complex(const RMat& a) {
  CMat r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = to_complex(a(i, j));
  return r;
}

}  // namespace mtasep
