#pragma once
// Lifting Markoff points to commutator pairs.

#include "csl/markoff.hpp"
#include "csl/mat2.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csl {

struct LiftError : std::runtime_error {
  std::vector<std::string> failed_entries;
  explicit LiftError(const std::string& msg, std::vector<std::string> entries = {})
      : std::runtime_error(msg), failed_entries(std::move(entries)) {}
};

template <class R>
struct Pair {
  Mat2<R> X, Y;
};

template <class R>
PointT<R> trace_triple(const Pair<R>& p) {
  return PointT<R>{{p.X.tr(), p.Y.tr(), (p.X * p.Y).tr()}};
}

// The unique X with Tr X = x1, Tr XY = x3 and W(X,Y) = Z:
//   Delta X = (Z - Y^{-2})(x1 I - x3 Y),  Delta = Tr Z + 2 - (Tr Y)^2.
template <class R>
Mat2<R> lift2(const Mat2<R>& Z, const Mat2<R>& Y, const R& x1, const R& x3) {
  const R one = ring_int(Z.a, 1), two = ring_int(Z.a, 2);
  if (Y.det() != one) throw LiftError("lift2: det Y != 1");
  R x2 = Y.tr();
  if ((Z * Y).tr() != x2) throw LiftError("lift2: Y is not in the trace set of Z (Tr ZY != Tr Y)");
  R t = Z.tr();
  if (markoff_form(x1, x2, x3) != R(t + two))
    throw LiftError("lift2: (x1,x2,x3) is not on the level Tr Z + 2");
  R delta = R(t + two - x2 * x2);
  Mat2<R> Yi = Y.adj();
  Mat2<R> I = Mat2<R>::identity(Z.a);
  Mat2<R> N = (Z - Yi * Yi) * (I.scaled(x1) - Y.scaled(x3));
  std::vector<std::string> bad;
  auto div = [&](const R& e, const char* name) {
    auto q = RingOps<R>::divide(e, delta);
    if (!q) {
      bad.push_back(name);
      return e;
    }
    return *q;
  };
  Mat2<R> X{div(N.a, "a"), div(N.b, "b"), div(N.c, "c"), div(N.d, "d")};
  if (!bad.empty())
    throw LiftError("lift2: entries not divisible by Delta = " + RingOps<R>::str(delta), bad);
  if (X.det() != one || X.tr() != x1 || (X * Y).tr() != x3 || commutator(X, Y) != Z)
    throw std::logic_error("lift2: contract violated");
  return X;
}

// Nielsen lift of a Markoff generator to pairs; returns the new pair and
// e in {+1,-1} with W(new) = W(old)^e exactly.
template <class R>
std::pair<Pair<R>, int> nielsen_move(const Move& m, const Pair<R>& p) {
  const Mat2<R>&X = p.X, &Y = p.Y;
  Mat2<R> Xi = X.inv(), Yi = Y.inv();
  switch (m.kind) {
    case Move::Sign:
      if (m.i == 0 && m.j == 2) return {{-X, Y}, 1};
      if (m.i == 1 && m.j == 2) return {{X, -Y}, 1};
      return {{-X, -Y}, 1};
    case Move::Vieta:
      if (m.i == 2) return {{Xi, X * Y * Xi}, -1};
      if (m.i == 0) return {{Y * X * Y, Yi}, -1};
      return {{Xi, X * Y * X}, -1};
    case Move::Perm: {
      const auto& s = m.sigma;
      if (s == std::array<int, 3>{0, 1, 2}) return {p, 1};
      if (s == std::array<int, 3>{0, 2, 1}) return {{Y * X * Yi, Xi * Yi}, -1};
      if (s == std::array<int, 3>{1, 0, 2}) return {{Y, X}, -1};
      if (s == std::array<int, 3>{1, 2, 0}) return {{X * Y * Xi, Yi * Xi}, 1};
      if (s == std::array<int, 3>{2, 0, 1}) return {{X * Y, Xi}, 1};
      return {{Y * X, Yi}, -1};  // (3,2,1)
    }
  }
  throw std::logic_error("nielsen_move: unknown move");
}

template <class R>
struct LiftResult {
  Mat2<R> X, Y, Z;
  enum Orientation { Zdirect, Zinv } orientation = Zdirect;
  std::vector<Move> moves;  // Nielsen moves applied after lift2
};

// Prop. lift1 driver: P on level Tr Z + 2, Y in S(Z) with Tr Y = x_j.
template <class R>
LiftResult<R> lift_point(const Mat2<R>& Z, const PointT<R>& P, const Mat2<R>& Y) {
  const R two = ring_int(Z.a, 2);
  R t = Z.tr();
  if (t == two || t == R(-two)) throw LiftError("lift_point: Tr Z = +-2");
  if (P.level() != R(t + two)) throw LiftError("lift_point: point is not on level Tr Z + 2");
  if (!in_trace_set(Z, Y)) throw LiftError("lift_point: Y is not in the trace set of Z");
  R y = Y.tr();
  int j = -1;
  for (int i = 0; i < 3 && j < 0; ++i)
    if (P.x[i] == y) j = i;
  if (j < 0) throw LiftError("lift_point: no coordinate equals Tr Y");
  R delta = R(t + two - y * y);
  if (RingOps<R>::is_zero(delta))
    throw LiftError("lift_point: Delta = t + 2 - (Tr Y)^2 vanishes; depends only on Tr Y, no fix-up possible");
  // Move x_j to the middle, keeping the other two in order.
  std::array<int, 3> sigma{(j == 0) ? 1 : 0, j, (j == 2) ? 1 : 2};
  Move to_mid = Move::perm(sigma);
  PointT<R> Pp = apply_move(to_mid, P);
  Mat2<R> Xp = lift2(Z, Y, Pp.x[0], Pp.x[2]);
  LiftResult<R> res;
  res.Z = Z;
  Pair<R> q{Xp, Y};
  int e = 1;
  Move back = to_mid.inverse();
  if (!(back.sigma == std::array<int, 3>{0, 1, 2})) {
    auto [q2, e2] = nielsen_move(back, q);
    q = q2;
    e = e2;
    res.moves.push_back(back);
  }
  res.X = q.X;
  res.Y = q.Y;
  res.orientation = e == 1 ? LiftResult<R>::Zdirect : LiftResult<R>::Zinv;
  Mat2<R> W = commutator(res.X, res.Y);
  if (!(trace_triple(q) == P) || W != (e == 1 ? Z : Z.inv()))
    throw std::logic_error("lift_point: orientation bookkeeping violated");
  return res;
}

// Bounded search over Z for Y in S(Z) with Tr Y = x and |entries| <= box.
std::optional<MatZ> find_trace_set_element(const MatZ& Z, const BigInt& x, long box);

// X = [[1,tau],[-1,1-tau]], Y = diag(eps, 1/eps), tau = (t-2)/eta^2.
template <class R>
Pair<R> universal_pair(const R& t, const R& eps) {
  if (!RingOps<R>::is_unit(eps)) throw std::invalid_argument("universal_pair: eps is not a unit");
  R ei = RingOps<R>::inverse(eps);
  R eta = R(eps - ei);
  if (!RingOps<R>::is_unit(eta)) throw std::invalid_argument("universal_pair: eps - 1/eps is not a unit");
  R etai = RingOps<R>::inverse(eta);
  const R one = ring_int(t, 1), zero = ring_int(t, 0), two = ring_int(t, 2);
  R tau = R(R(t - two) * etai * etai);
  Pair<R> p{{one, tau, R(-one), R(one - tau)}, {eps, zero, zero, ei}};
  if (commutator(p.X, p.Y).tr() != t) throw std::logic_error("universal_pair: contract violated");
  return p;
}

// (w^{-1}(1-k+z^2), w^{-1}(zeta - (k-z^2) zeta^{-1}), z), zeta = (z+w)/2.
template <class R>
PointT<R> universal_point(const R& k, const R& z, const R& w) {
  const R one = ring_int(k, 1), two = ring_int(k, 2), four = ring_int(k, 4);
  if (!RingOps<R>::is_unit(two)) throw std::invalid_argument("universal_point: 2 must be a unit");
  if (R(z * z - four) != R(w * w)) throw std::invalid_argument("universal_point: z^2 - 4 != w^2");
  if (!RingOps<R>::is_unit(w)) throw std::invalid_argument("universal_point: w is not a unit");
  R zeta = *RingOps<R>::divide(R(z + w), two);
  if (!RingOps<R>::is_unit(zeta)) throw std::invalid_argument("universal_point: zeta = (z+w)/2 is not a unit");
  R wi = RingOps<R>::inverse(w), zi = RingOps<R>::inverse(zeta);
  PointT<R> P{{R(wi * (one - k + z * z)), R(wi * (zeta - (k - z * z) * zi)), z}};
  if (P.level() != k) throw std::logic_error("universal_point: contract violated");
  return P;
}

// W(X,Y) = -I from r1^2 + r2^2 + r3^2 = 0 over Z/q.
struct MinusIdentityResult {
  bool solvable = false;
  std::string reason;
  Mat2<ModInt> X, Y;
  BigInt u, v;
};
MinusIdentityResult minus_identity_commutator_modq(const BigInt& q, const BigInt& r1, const BigInt& r2, const BigInt& r3);
// Ring descriptor front end: "Zmod:<q>", "Z", "Z1/L", "Q"; other rings are refused.
MinusIdentityResult minus_identity_commutator(const std::string& ring, const BigInt& r1, const BigInt& r2,
                                              const BigInt& r3);

// Eigenvector of M for eigenvalue lambda, made primitive with the ring gcd.
template <class R>
std::array<R, 2> primitive_eigenvector(const Mat2<R>& M, const R& lambda) {
  std::array<R, 2> v = {M.b, R(lambda - M.a)};
  if (RingOps<R>::is_zero(v[0]) && RingOps<R>::is_zero(v[1])) v = {R(lambda - M.d), M.c};
  if (RingOps<R>::is_zero(v[0]) && RingOps<R>::is_zero(v[1]))
    throw std::domain_error("primitive_eigenvector: scalar matrix");
  R g = RingOps<R>::gcd(v[0], v[1]);
  return {*RingOps<R>::divide(v[0], g), *RingOps<R>::divide(v[1], g)};
}

template <class R>
struct PidCommutator {
  Mat2<R> X, Y;   // W(X, Y) = Z, Y = U
  Mat2<R> N;      // N^{-1} U N = U1 = diag(eps, 1/eps)
  Mat2<R> U1, Z1, X1;
  std::string branch;  // which entry of B = Z1 U1 is nonzero
};

// For U in S(Z) with Tr U = eps + 1/eps over a PID with eta = eps - 1/eps a
// unit: diagonalize U, then Z1 U1 is conjugate to U1 along eigenvector bases.
template <class R>
PidCommutator<R> pid_commutator_via_trace_set(const Mat2<R>& Z, const Mat2<R>& U, const R& eps) {
  if (!RingOps<R>::is_unit(eps)) throw std::invalid_argument("eps is not a unit");
  R ei = RingOps<R>::inverse(eps);
  R eta = R(eps - ei);
  if (!RingOps<R>::is_unit(eta)) throw std::invalid_argument("eps - 1/eps is not a unit");
  if (!in_trace_set(Z, U)) throw std::invalid_argument("U is not in the trace set of Z");
  if (U.tr() != R(eps + ei)) throw std::invalid_argument("Tr U != eps + 1/eps");
  auto basis = [&](const Mat2<R>& M) {
    auto v1 = primitive_eigenvector(M, eps), v2 = primitive_eigenvector(M, ei);
    R d = R(v1[0] * v2[1] - v1[1] * v2[0]);
    if (!RingOps<R>::is_unit(d)) throw std::logic_error("eigenvector basis is not unimodular");
    R di = RingOps<R>::inverse(d);
    return Mat2<R>{v1[0], R(v2[0] * di), v1[1], R(v2[1] * di)};
  };
  PidCommutator<R> out;
  out.N = basis(U);
  Mat2<R> Ni = out.N.inv();
  out.U1 = Ni * U * out.N;
  out.Z1 = Ni * Z * out.N;
  Mat2<R> B = out.Z1 * out.U1;
  out.branch = !RingOps<R>::is_zero(B.b) ? "b2!=0" : (!RingOps<R>::is_zero(B.c) ? "b3!=0" : "b2=b3=0");
  out.X1 = basis(B);
  out.X = out.N * out.X1 * Ni;
  out.Y = U;
  if (B * out.X1 != out.X1 * out.U1 || commutator(out.X, out.Y) != Z)
    throw std::logic_error("pid_commutator_via_trace_set: contract violated");
  return out;
}

}  // namespace csl
