#include "csl/lifting.hpp"

namespace csl {

std::optional<MatZ> find_trace_set_element(const MatZ& Z, const BigInt& x, long box) {
  // Y = [[a,b],[c,d]] with a + d = x, Tr ZY = x, ad - bc = 1.
  for (long ai = -box; ai <= box; ++ai) {
    BigInt a = ai, d = x - a;
    if (abs(d) > box) continue;
    BigInt r = x - Z.a * a - Z.d * d;  // = Z.c * b + Z.b * c
    BigInt ad1 = a * d - 1;
    for (long bi = -box; bi <= box; ++bi) {
      BigInt b = bi, c;
      if (Z.b != 0) {
        BigInt num = r - Z.c * b;
        if (!mpz_divisible_p(num.get_mpz_t(), Z.b.get_mpz_t())) continue;
        c = num / Z.b;
      } else if (Z.c * b != r) {
        continue;
      } else if (b != 0) {
        if (!mpz_divisible_p(ad1.get_mpz_t(), b.get_mpz_t())) continue;
        c = ad1 / b;
      } else {
        if (ad1 != 0) continue;
        c = 0;
      }
      if (abs(c) > box) continue;
      MatZ Y{a, b, c, d};
      if (Y.det() == 1 && in_trace_set(Z, Y)) return Y;
    }
  }
  return std::nullopt;
}

MinusIdentityResult minus_identity_commutator_modq(const BigInt& q, const BigInt& r1_in, const BigInt& r2_in,
                                                   const BigInt& r3_in) {
  if (q < 2) throw std::invalid_argument("modulus must be at least 2");
  MinusIdentityResult res;
  BigInt r1 = mod(r1_in, q), r2 = mod(r2_in, q), r3 = mod(r3_in, q);
  if (mod(BigInt(r1 * r1 + r2 * r2 + r3 * r3), q) != 0) {
    res.reason = "sum of squares is not zero";
    return res;
  }
  if (r1 == 0 && r2 == 0 && r3 == 0) {
    res.reason = "trivial solution";
    return res;
  }
  // r1 u - r2 v = 1 is solvable in Z/q iff (r1, r2, q) = 1.
  BigInt s, w, al, be;
  BigInt g = egcd(r1, r2, s, w);  // r1 s + r2 w = g
  BigInt h = egcd(g, q, al, be);  // g al + q be = h
  if (h != 1) {
    res.reason = "no Bezout pair: gcd(r1, r2, q) != 1";
    return res;
  }
  res.u = mod(BigInt(s * al), q);
  res.v = mod(BigInt(-w * al), q);
  auto M = [&](const BigInt& v) { return ModInt(v, q); };
  const BigInt &u = res.u, &v = res.v;
  res.X = {M(u * r3), M(u * u * r2 + v * (r1 * u + 1)), M(r2), M(-u * r3)};
  res.Y = {M(v * r3), M(v * v * r1 + u * (r2 * v - 1)), M(r1), M(-v * r3)};
  ModInt one = M(1);
  if (res.X.det() != one || res.Y.det() != one || commutator(res.X, res.Y) != Mat2<ModInt>::scalar(M(-1)))
    throw std::logic_error("minus_identity_commutator: contract violated");
  res.solvable = true;
  return res;
}

MinusIdentityResult minus_identity_commutator(const std::string& ring, const BigInt& r1, const BigInt& r2,
                                              const BigInt& r3) {
  if (ring.rfind("Zmod:", 0) == 0) return minus_identity_commutator_modq(parse_bigint(ring.substr(5)), r1, r2, r3);
  if (ring == "Z" || ring == "Q" || ring.rfind("Z1/", 0) == 0) {
    MinusIdentityResult res;
    if (r1 * r1 + r2 * r2 + r3 * r3 != 0)
      res.reason = "sum of squares is not zero";
    else if (r1 == 0 && r2 == 0 && r3 == 0)
      res.reason = "trivial solution; -I is not a commutator in SL2 of a subring of R";
    return res;
  }
  throw std::invalid_argument("unsupported ring: " + ring);
}

}  // namespace csl
