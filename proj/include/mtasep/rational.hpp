#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "mtasep/errors.hpp"

namespace mtasep {

// Exact arbitrary-precision rational scalar. Arithmetic is exact;
// every value is kept in canonical (reduced, positive-denominator) form.
using Rational = mpq_class;

// Double-precision complex scalar for quadrature and time evolution.
// Comparisons against Complex values always go through an explicit
// tolerance; there is no operator== path in this toolkit's code.
using Complex = std::complex<double>;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw DivisionByZeroError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "n" or "n/d" (optionally signed).
inline Rational rat_from_string(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw DomainError("cannot parse rational: '" + s + "'");
  if (q.get_den() == 0)
    throw DivisionByZeroError("rational with zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline Complex to_complex(const Rational& q) { return Complex(q.get_d(), 0.0); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline Rational abs_value(const Rational& q) { return abs(q); }

// Integer power with negative exponents allowed (base must be nonzero
// when e < 0).
inline Rational pow_int(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e)
                           : static_cast<unsigned long>(e);
  if (invert && is_zero(base))
    throw DivisionByZeroError("0 raised to a negative power");
  Rational acc(1), b = base;
  while (k) {
    if (k & 1) acc *= b;
    if (k >>= 1) b *= b;
  }
  if (invert) acc = Rational(1) / acc;
  return acc;
}

inline Complex pow_int(const Complex& base, long e) {
  if (e == 0) return Complex(1.0, 0.0);
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e)
                           : static_cast<unsigned long>(e);
  Complex acc(1.0, 0.0), b = base;
  while (k) {
    if (k & 1) acc *= b;
    if (k >>= 1) b *= b;
  }
  return invert ? Complex(1.0, 0.0) / acc : acc;
}

}  // namespace mtasep
