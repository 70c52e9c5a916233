#include "csl/mat2.hpp"

#include "csl/arith.hpp"

namespace csl {

namespace {

Mat2<long> mulp(const Mat2<long>& x, const Mat2<long>& y, long p) {
  return {mod(x.a * y.a + x.b * y.c, p), mod(x.a * y.b + x.b * y.d, p), mod(x.c * y.a + x.d * y.c, p),
          mod(x.c * y.b + x.d * y.d, p)};
}

Mat2<long> reduce(const Mat2<long>& x, long p) { return {mod(x.a, p), mod(x.b, p), mod(x.c, p), mod(x.d, p)}; }

long detp(const Mat2<long>& x, long p) { return mod(x.a * x.d - x.b * x.c, p); }

// P with det 1 and P^{-1} A P = [[0,1],[-1,t]].
std::optional<Mat2<long>> to_companion(const Mat2<long>& A, long p) {
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y) {
      long ax = mod(A.a * x + A.b * y, p), ay = mod(A.c * x + A.d * y, p);
      if (mod(x * ay - y * ax, p) == p - 1)
        return Mat2<long>{x, mod(-ax, p), y, mod(-ay, p)};
    }
  return std::nullopt;
}

Mat2<long> adjp(const Mat2<long>& x, long p) { return {x.d, mod(-x.b, p), mod(-x.c, p), x.a}; }

}  // namespace

ConjResult sl2_conjugacy_test_modp(const Mat2<long>& A0, const Mat2<long>& B0, long p) {
  if (p < 3 || !is_prime(BigInt(p))) throw std::invalid_argument("conjugacy test needs an odd prime");
  Mat2<long> A = reduce(A0, p), B = reduce(B0, p);
  if (detp(A, p) != 1 || detp(B, p) != 1) throw std::domain_error("conjugacy test: determinant must be 1");
  ConjResult res;
  long t = mod(A.a + A.d, p);
  if (t != mod(B.a + B.d, p)) return res;
  if (A == B) {
    res.conjugate = true;
    res.gamma = Mat2<long>{1, 0, 0, 1};
    return res;
  }
  if (t != 2 && t != p - 2) {
    auto PA = to_companion(A, p), PB = to_companion(B, p);
    if (!PA || !PB) throw std::logic_error("binary form failed to represent -1");
    res.conjugate = true;
    res.gamma = mulp(*PB, adjp(*PA, p), p);
    return res;
  }
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c)
        for (long d = 0; d < p; ++d) {
          Mat2<long> g{a, b, c, d};
          if (detp(g, p) != 1) continue;
          if (mulp(g, A, p) == mulp(B, g, p)) {
            res.conjugate = true;
            res.gamma = g;
            return res;
          }
        }
  return res;
}

long count_conic_modp(const BigInt& Delta, const BigInt& n, long p) {
  if (p < 3 || !is_prime(BigInt(p))) throw std::invalid_argument("count_conic_modp needs an odd prime");
  BigInt P(p);
  bool p_n = mod(n, P) == 0, p_d = mod(Delta, P) == 0;
  long chi_d = jacobi(Delta, P), chi_n = jacobi(n, P);
  if (!p_n && p_d) return (1 + chi_n) * p;
  if (!p_n) return p - chi_d;
  return p * (1 + chi_d) - chi_d;
}

long count_conic_modp_bruteforce(long Delta, long n, long p) {
  long cnt = 0;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (mod(x * x - Delta * y * y - n, p) == 0) ++cnt;
  return cnt;
}

}  // namespace csl
