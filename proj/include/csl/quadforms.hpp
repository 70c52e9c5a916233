#pragma once
// Ternary forms f_x(u) = u1^2+u2^2+u3^2 + x1 u1u2 + x2 u1u3 + x3 u2u3 attached
// to Markoff points, their Hasse invariants, and M-type matrices.

#include "csl/arith.hpp"
#include "csl/markoff.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csl {

using Mat3 = std::array<std::array<BigInt, 3>, 3>;

// Gram matrix [[2,x1,x2],[x1,2,x3],[x2,x3,2]]; det = -2(k-4).
Mat3 gram_matrix(const Point& P);
BigInt det3(const Mat3& m);
Mat3 mul3(const Mat3& a, const Mat3& b);
Mat3 transpose3(const Mat3& a);
BigInt eval_form(const Point& P, const std::array<BigInt, 3>& u);

struct HasseProfile {
  std::vector<std::pair<Place, int>> entries;  // primes ascending, then inf
  int product = 1;
  int coordinate = 0;  // coordinate used for x^2 - 4
  int at(const BigInt& p) const;  // +1 for primes not listed
  // The places where the invariant is -1, as names ("5", "13", "inf").
  std::vector<std::string> minus_places() const;
};

HasseProfile hasse_profile(const Point& P);

// Legendre's criterion for ax^2+by^2+cz^2 with a>0, b,c<0, abc squarefree.
bool legendre_isotropic(const BigInt& a, const BigInt& b, const BigInt& c);

struct IsotropyResult {
  enum Verdict { Isotropic, Anisotropic, Inapplicable } verdict = Inapplicable;
  int coordinate = -1;  // j used
  BigInt m, n;          // squarefree parts of x_j^2 - 4 and k - 4
  std::optional<BigInt> obstruction_prime;           // anisotropic case
  std::optional<std::array<BigInt, 3>> witness;      // verified zero, if found in the box
  long witness_bound = 600;
};
IsotropyResult form_isotropic(const Point& P, long witness_bound = 600);

// Smallest primitive zero (max-norm, then lexicographic) with |u_i| <= bound.
std::optional<std::array<BigInt, 3>> find_isotropic_vector(const Point& P, long bound);

// gamma with gamma^T X(P) gamma = X(apply_move(m, P)).
Mat3 mtype_matrix(const Move& m, const Point& P);

}  // namespace csl
