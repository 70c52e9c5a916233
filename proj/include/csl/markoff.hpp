#pragma once
// Markoff surfaces x1^2 + x2^2 + x3^2 - x1 x2 x3 = k and the Markoff group.

#include "csl/bigint.hpp"
#include "csl/localized.hpp"
#include "csl/mat2.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace csl {

template <class R>
struct PointT {
  std::array<R, 3> x;
  R level() const { return markoff_form(x[0], x[1], x[2]); }
  bool operator==(const PointT& o) const { return x == o.x; }
  bool operator<(const PointT& o) const { return x < o.x; }
};
using Point = PointT<BigInt>;

inline Point pt(long a, long b, long c) { return Point{{BigInt(a), BigInt(b), BigInt(c)}}; }
std::string to_string(const Point& p);
Point parse_point(const std::string& s);  // "x1,x2,x3"

// Generators of the Markoff group (indices are 0-based internally).
struct Move {
  enum Kind { Vieta, Perm, Sign } kind = Vieta;
  int i = 0, j = 0;            // Vieta: coordinate i. Sign: coordinates i<j.
  std::array<int, 3> sigma{};  // Perm: new x_k = old x_{sigma[k]}

  static Move vieta(int i) { return Move{Vieta, i, 0, {}}; }
  static Move perm(std::array<int, 3> s) { return Move{Perm, 0, 0, s}; }
  static Move sign(int i, int j) { return Move{Sign, std::min(i, j), std::max(i, j), {}}; }
  Move inverse() const;
  std::string str() const;
  bool operator==(const Move& o) const;
};

template <class R>
PointT<R> apply_move(const Move& m, const PointT<R>& P) {
  PointT<R> Q = P;
  switch (m.kind) {
    case Move::Vieta: {
      int a = (m.i + 1) % 3, b = (m.i + 2) % 3;
      Q.x[m.i] = R(P.x[a] * P.x[b] - P.x[m.i]);
      break;
    }
    case Move::Perm:
      for (int k = 0; k < 3; ++k) Q.x[k] = P.x[m.sigma[k]];
      break;
    case Move::Sign:
      Q.x[m.i] = R(-P.x[m.i]);
      Q.x[m.j] = R(-P.x[m.j]);
      break;
  }
  return Q;
}

// All Markoff-group generators used by property tests.
std::vector<Move> all_generators();

BigInt max_norm(const Point& p);

struct Reduction {
  Point normal_form;
  std::vector<Move> path;  // applying path in order to the input yields normal_form
};

// Descent to the canonical fundamental point of the orbit.
Reduction reduce(const Point& P, long max_steps = 1000000);
// Replays a reduction path backwards from the normal form.
Point replay_from_normal_form(const Point& nf, const std::vector<Move>& path);

struct ClassData {
  BigInt k;
  BigInt bound;
  struct Entry {
    Point rep;
    std::vector<Point> orbit_sample;
  };
  std::vector<Entry> classes;
};
BigInt default_class_bound(const BigInt& k);
ClassData class_data(const BigInt& k, std::optional<BigInt> bound = std::nullopt);

bool admissible_k(const BigInt& k);
bool admissible_t(const BigInt& t);
// Residue lists behind admissible_t.
bool obstructed_mod16(const BigInt& t);
bool obstructed_mod9(const BigInt& t);

// All integer points with |x1| <= |x2| <= |x3| <= bound (OpenMP kernel).
std::vector<Point> search_integral(const BigInt& k, const BigInt& bound);
// Same contract, serial brute-force triple loop (test oracle, small bounds).
std::vector<Point> search_integral_reference(long k, long bound);
// All permutations and double sign changes of the given points.
std::vector<Point> expand_symmetries(const std::vector<Point>& pts);

struct LocalizedPoint {
  unsigned a;          // common exponent of ell in the denominators of x2, x3
  Point numerators;    // (x1, x2, x3) with the point equal to (x1, x2/ell^a, x3/ell^a)
  PointT<LocalizedInt> value;
};
// Points of the two shapes (integral; (x1, x2/l^a, x3/l^a) with l !| x2 x3)
// with numerators bounded by bound, 1 <= a <= max_exp.
std::vector<LocalizedPoint> search_localized(const BigInt& k, const BigInt& ell, unsigned max_exp,
                                             const BigInt& bound);

// QR-type of a point modulo an odd prime p | k-4: true when at least two of
// x_i^2 - 4 are quadratic residues.
bool qr_type(const Point& P, const BigInt& p);

struct E2GoodResult {
  enum Verdict { AllBad, Inconclusive } verdict = Inconclusive;
  struct PerClass {
    Point rep;
    bool found = false;
    BigInt p;
    BigInt x;
  };
  std::vector<PerClass> classes;
};
E2GoodResult e2_good_test(const BigInt& k);

// Random walk in the orbit of P (deterministic given the seed); returns up to
// count distinct points, P first.
std::vector<Point> orbit_sample(const Point& P, size_t count, uint64_t seed, long max_norm_cap = 0);

}  // namespace csl
