#pragma once
// Arbitrary-precision integers (GMP) plus the handful of helpers the rest of
// the library leans on.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace csl {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big(long v) { return BigInt(v); }
BigInt parse_bigint(const std::string& s);
std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

// Nonnegative residue of a modulo m (m > 0).
BigInt mod(const BigInt& a, const BigInt& m);
long mod(long a, long m);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt isqrt(const BigInt& n);
bool is_square(const BigInt& n, BigInt* root = nullptr);
BigInt powm(const BigInt& b, const BigInt& e, const BigInt& m);
BigInt pow(const BigInt& b, unsigned long e);
bool fits_i64(const BigInt& v);
int64_t to_i64(const BigInt& v);
int sign(const BigInt& v);

// Extended gcd: returns g = gcd(a,b) >= 0 with a*x + b*y = g.
BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y);

// Integer square root and square test on 128-bit values (used by searches).
bool is_square_i128(__int128 n, __int128* root);

}  // namespace csl
