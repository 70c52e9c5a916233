#pragma once
// 2x2 matrices over any ring with RingOps.

#include "csl/ring.hpp"

#include <array>
#include <optional>
#include <string>

namespace csl {

template <class R>
struct Mat2 {
  R a, b, c, d;  // [[a,b],[c,d]]

  static Mat2 identity(const R& like) {
    return {ring_int(like, 1), ring_int(like, 0), ring_int(like, 0), ring_int(like, 1)};
  }
  static Mat2 scalar(const R& s) { return {s, ring_int(s, 0), ring_int(s, 0), s}; }

  R det() const { return R(a * d - b * c); }
  R tr() const { return R(a + d); }
  // Adjugate A' = [[d,-b],[-c,a]]; equals the inverse when det = 1.
  Mat2 adj() const { return {d, R(-b), R(-c), a}; }
  bool is_invertible() const { return RingOps<R>::is_unit(det()); }
  Mat2 inv() const {
    R di = RingOps<R>::inverse(det());
    return {R(d * di), R(-b * di), R(-c * di), R(a * di)};
  }
  Mat2 operator-() const { return {R(-a), R(-b), R(-c), R(-d)}; }
  Mat2 operator+(const Mat2& o) const { return {R(a + o.a), R(b + o.b), R(c + o.c), R(d + o.d)}; }
  Mat2 operator-(const Mat2& o) const { return {R(a - o.a), R(b - o.b), R(c - o.c), R(d - o.d)}; }
  Mat2 operator*(const Mat2& o) const {
    return {R(a * o.a + b * o.c), R(a * o.b + b * o.d), R(c * o.a + d * o.c), R(c * o.b + d * o.d)};
  }
  Mat2 scaled(const R& s) const { return {R(s * a), R(s * b), R(s * c), R(s * d)}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  template <class F>
  auto map(F f) const -> Mat2<decltype(f(a))> {
    return {f(a), f(b), f(c), f(d)};
  }
  std::string str() const {
    auto s = [](const R& x) { return RingOps<R>::str(x); };
    return "[[" + s(a) + "," + s(b) + "],[" + s(c) + "," + s(d) + "]]";
  }
};

using MatZ = Mat2<BigInt>;

inline MatZ matz(long a, long b, long c, long d) { return {BigInt(a), BigInt(b), BigInt(c), BigInt(d)}; }

template <class R>
Mat2<R> mpow(const Mat2<R>& m, long e) {
  Mat2<R> base = e < 0 ? m.inv() : m;
  unsigned long n = e < 0 ? (unsigned long)(-e) : (unsigned long)e;
  Mat2<R> r = Mat2<R>::identity(m.a);
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

// W(X,Y) = X Y X^{-1} Y^{-1}.
template <class R>
Mat2<R> commutator(const Mat2<R>& X, const Mat2<R>& Y) {
  if (!X.is_invertible() || !Y.is_invertible()) throw std::domain_error("commutator: non-invertible input");
  return X * Y * X.inv() * Y.inv();
}

// M(x,y,z) = x^2 + y^2 + z^2 - xyz.
template <class R>
R markoff_form(const R& x, const R& y, const R& z) {
  return R(x * x + y * y + z * z - x * y * z);
}

// M(Tr X, Tr Y, Tr XY); equals Tr W(X,Y) + 2.
template <class R>
R fricke_level(const Mat2<R>& X, const Mat2<R>& Y) {
  R one = ring_int(X.a, 1);
  if (X.det() != one || Y.det() != one) throw std::domain_error("fricke_level: determinant must be 1");
  return markoff_form(X.tr(), Y.tr(), (X * Y).tr());
}

// X in S(Z): det X = 1 and Tr ZX = Tr X.
template <class R>
bool in_trace_set(const Mat2<R>& Z, const Mat2<R>& X) {
  return X.det() == ring_int(X.a, 1) && (Z * X).tr() == X.tr();
}

// Conjugacy in SL2(Z/p), p an odd prime (entries are residues). When the
// trace is not +-2 both matrices are conjugated to [[0,1],[-1,t]]; otherwise
// the group is searched exhaustively (intended for p <= 31).
struct ConjResult {
  bool conjugate = false;
  std::optional<Mat2<long>> gamma;  // gamma * A * gamma^{-1} = B
};
ConjResult sl2_conjugacy_test_modp(const Mat2<long>& A, const Mat2<long>& B, long p);

// #{(x,y) in F_p^2 : x^2 - Delta y^2 = n}, closed form.
long count_conic_modp(const BigInt& Delta, const BigInt& n, long p);
long count_conic_modp_bruteforce(long Delta, long n, long p);

}  // namespace csl
