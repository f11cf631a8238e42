#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtasep/errors.hpp"

namespace mtasep {

// Species words are sequences over {1,...,N}; matrices over n-particle
// word spaces are indexed lexicographically from 11...1 to NN...N.

inline std::size_t word_rank(std::span<const int> word, int N) {
  std::size_t r = 0;
  for (int s : word) {
    if (s < 1 || s > N) throw DomainError("species out of range 1..N");
    r = r * static_cast<std::size_t>(N) + static_cast<std::size_t>(s - 1);
  }
  return r;
}

inline std::vector<int> word_unrank(std::size_t rank, int N, int len) {
  std::vector<int> w(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(rank % N) + 1;
    rank /= static_cast<std::size_t>(N);
  }
  if (rank != 0) throw DomainError("word rank out of range");
  return w;
}

inline std::string word_string(std::span<const int> word) {
  std::string s;
  s.reserve(word.size());
  for (int v : word) s += static_cast<char>('0' + v);
  return s;
}

inline std::string word_string(std::size_t rank, int N, int len) {
  auto w = word_unrank(rank, N, len);
  return word_string(w);
}

// Rank of the two-letter word (a,b) in the N^2 word space.
inline std::size_t pair_rank(int a, int b, int N) {
  const int w[2] = {a, b};
  return word_rank(std::span<const int>(w, 2), N);
}

inline std::size_t pow_sz(int base, int exp) {
  std::size_t r = 1;
  for (int k = 0; k < exp; ++k) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace mtasep
