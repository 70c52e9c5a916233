#pragma once
// Shared fixtures: a seeded RNG (CSL_TEST_SEED overrides) and random SL2(Z).

#include "csl/mat2.hpp"

#include <cstdlib>
#include <random>

namespace testutil {

inline std::mt19937_64& rng() {
  static std::mt19937_64 g([] {
    const char* s = std::getenv("CSL_TEST_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20240917ULL;
  }());
  return g;
}

inline long rand_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Word of length len in the elementary generators [[1,e],[0,1]], [[1,0],[e,1]].
inline csl::MatZ random_sl2z(int len = 6, long emax = 3) {
  csl::MatZ M = csl::matz(1, 0, 0, 1);
  for (int i = 0; i < len; ++i) {
    long e = 0;
    while (e == 0) e = rand_int(-emax, emax);
    M = M * (i % 2 ? csl::matz(1, e, 0, 1) : csl::matz(1, 0, e, 1));
  }
  if (rand_int(0, 1)) M = -M;
  return M;
}

inline csl::MatZ random_mat2z(long box = 20) {
  return csl::matz(rand_int(-box, box), rand_int(-box, box), rand_int(-box, box), rand_int(-box, box));
}

}  // namespace testutil
