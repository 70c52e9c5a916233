#include "csl/bigint.hpp"

#include <cmath>
#include <climits>

namespace csl {

BigInt parse_bigint(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != ' ' && c != '_') t.push_back(c);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  if (t.empty() || t == "-") throw std::invalid_argument("not an integer: '" + s + "'");
  for (size_t i = (t[0] == '-') ? 1 : 0; i < t.size(); ++i)
    if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("not an integer: '" + s + "'");
  return BigInt(t);
}

std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const Rational& v) { return v.get_str(); }

BigInt mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const BigInt& n, BigInt* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = isqrt(n);
  return true;
}

BigInt powm(const BigInt& b, const BigInt& e, const BigInt& m) {
  BigInt r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt pow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

bool fits_i64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

int64_t to_i64(const BigInt& v) {
  if (!fits_i64(v)) throw std::overflow_error("integer does not fit in 64 bits");
  return v.get_si();
}

int sign(const BigInt& v) { return sgn(v); }

BigInt egcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
  BigInt g;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool is_square_i128(__int128 n, __int128* root) {
  if (n < 0) return false;
  if (n < 2) {
    if (root) *root = n;
    return true;
  }
  // Quadratic residues mod 64 reject most non-squares cheaply.
  static const uint64_t qr64 = [] {
    uint64_t m = 0;
    for (int i = 0; i < 64; ++i) m |= uint64_t(1) << ((i * i) % 64);
    return m;
  }();
  if (!((qr64 >> (int)(n & 63)) & 1)) return false;
  __int128 r = (__int128)std::sqrt((long double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

}  // namespace csl
