#pragma once
// Quadratic symbols, primality and factorization.

#include "csl/bigint.hpp"

#include <utility>
#include <vector>

namespace csl {

// Jacobi symbol (a|n) for odd n >= 1.
int jacobi(const BigInt& a, const BigInt& n);

// Deterministic Miller-Rabin below 3.3e24; BPSW-backed GMP test beyond.
bool is_prime(const BigInt& n);

struct PrimePower {
  BigInt p;
  unsigned e;
  bool operator==(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

// Factorization of |n| in increasing prime order. Trial division up to
// trial_bound, then Pollard-rho (Brent) on the cofactor.
Factorization factorize(const BigInt& n, unsigned long trial_bound = 1000000);
std::vector<BigInt> prime_divisors(const BigInt& n);

// Squarefree m with n = m*s^2, sign of n preserved.
BigInt squarefree_part(const BigInt& n);
bool is_squarefree(const BigInt& n);

// A place of Q: an odd or even prime, or the real place.
struct Place {
  BigInt p;  // 0 encodes the infinite place
  static Place inf() { return Place{BigInt(0)}; }
  static Place prime(const BigInt& q) { return Place{q}; }
  bool is_inf() const { return p == 0; }
  std::string name() const { return is_inf() ? "inf" : p.get_str(); }
};

// Hilbert symbol (a,b)_p for nonzero integers / rationals.
int hilbert(const BigInt& a, const BigInt& b, const Place& v);
int hilbert(const Rational& a, const Rational& b, const Place& v);

// Valuation and the unit part: n = p^v * u with p not dividing u.
unsigned valuation(const BigInt& n, const BigInt& p, BigInt* unit = nullptr);

// Is a a square modulo n (n squarefree, n >= 1)? Decided prime by prime.
bool is_square_mod_squarefree(const BigInt& a, const BigInt& n);

}  // namespace csl
