#pragma once

#include "mtasep/matrix.hpp"
#include "mtasep/rng.hpp"

namespace mtasep::testutil {

inline Rational random_rational(SplitMix64& rng, long bound = 64) {
  long num = 1 + static_cast<long>(rng.bounded(static_cast<std::uint64_t>(bound)));
  long den = 1 + static_cast<long>(rng.bounded(static_cast<std::uint64_t>(bound)));
  if (rng.bounded(2)) num = -num;
  return rat(num, den);
}

inline RMat random_rmatrix(SplitMix64& rng, std::size_t rows, std::size_t cols,
                           long bound = 8) {
  RMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, bound);
  return m;
}

}  // namespace mtasep::testutil
