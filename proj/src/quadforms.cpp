#include "csl/quadforms.hpp"

#include <algorithm>
#include <set>

namespace csl {

Mat3 gram_matrix(const Point& P) {
  const auto& x = P.x;
  return Mat3{{{BigInt(2), x[0], x[1]}, {x[0], BigInt(2), x[2]}, {x[1], x[2], BigInt(2)}}};
}

BigInt det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 mul3(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      r[i][j] = 0;
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

Mat3 transpose3(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i];
  return r;
}

BigInt eval_form(const Point& P, const std::array<BigInt, 3>& u) {
  const auto& x = P.x;
  return u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + x[0] * u[0] * u[1] + x[1] * u[0] * u[2] + x[2] * u[1] * u[2];
}

int HasseProfile::at(const BigInt& p) const {
  for (auto& [pl, v] : entries)
    if (!pl.is_inf() && pl.p == p) return v;
  return 1;
}

std::vector<std::string> HasseProfile::minus_places() const {
  std::vector<std::string> out;
  for (auto& [pl, v] : entries)
    if (v == -1) out.push_back(pl.name());
  return out;
}

HasseProfile hasse_profile(const Point& P) {
  BigInt k = P.level();
  if (k <= 4) throw std::invalid_argument("hasse_profile: level must exceed 4");
  BigInt km4 = k - 4;
  std::vector<int> usable;
  for (int i = 0; i < 3; ++i)
    if (P.x[i] * P.x[i] != 4) usable.push_back(i);
  if (usable.empty()) throw std::logic_error("hasse_profile: all coordinates are +-2");

  // Factor only the smallest x_j^2 - 4; the others are checked on the same primes.
  int j0 = usable[0];
  for (int j : usable)
    if (abs(BigInt(P.x[j] * P.x[j] - 4)) < abs(BigInt(P.x[j0] * P.x[j0] - 4))) j0 = j;
  BigInt a0 = P.x[j0] * P.x[j0] - 4;
  std::set<BigInt> ps = {BigInt(2)};
  for (auto& p : prime_divisors(km4)) ps.insert(p);
  for (auto& p : prime_divisors(a0)) ps.insert(p);

  HasseProfile prof;
  prof.coordinate = j0;
  for (auto& p : ps) prof.entries.push_back({Place::prime(p), hilbert(a0, km4, Place::prime(p))});
  prof.entries.push_back({Place::inf(), hilbert(a0, km4, Place::inf())});
  for (auto& e : prof.entries) prof.product *= e.second;

  // C_p(x_1) = C_p(x_2) = C_p(x_3).
  for (int j : usable) {
    BigInt aj = P.x[j] * P.x[j] - 4;
    for (auto& e : prof.entries)
      if (hilbert(aj, km4, e.first) != e.second)
        throw std::logic_error("hasse_profile: coordinate invariants disagree at " + e.first.name());
  }
  return prof;
}

bool legendre_isotropic(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (!(a > 0 && b < 0 && c < 0)) throw std::invalid_argument("legendre_isotropic: need a > 0, b < 0, c < 0");
  if (!is_squarefree(BigInt(a * b * c))) throw std::invalid_argument("legendre_isotropic: abc not squarefree");
  return is_square_mod_squarefree(BigInt(-a * b), BigInt(-c)) && is_square_mod_squarefree(BigInt(-a * c), BigInt(-b)) &&
         is_square_mod_squarefree(BigInt(-b * c), a);
}

namespace {

// First odd prime p | mod at which target is a non-residue.
std::optional<BigInt> failing_prime(const BigInt& target, const BigInt& modulus) {
  if (modulus == 1) return std::nullopt;
  for (auto& p : prime_divisors(modulus))
    if (p != 2 && jacobi(target, p) == -1) return p;
  return std::nullopt;
}

}  // namespace

std::optional<std::array<BigInt, 3>> find_isotropic_vector(const Point& P, long bound) {
  const auto& x = P.x;
  std::optional<std::array<BigInt, 3>> best;
  BigInt bestN;
  auto consider = [&](const BigInt& u1, const BigInt& u2, const BigInt& u3) {
    if (abs(u3) > bound) return;
    if (gcd(gcd(u1, u2), u3) != 1) return;
    std::array<BigInt, 3> u = {u1, u2, u3};
    BigInt n = std::max({abs(u1), abs(u2), abs(u3)});
    if (!best || n < bestN || (n == bestN && u < *best)) {
      best = u;
      bestN = n;
    }
  };
  for (long a = 0; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      if (a == 0 && b <= 0) continue;  // u and -u give the same zero
      BigInt u1 = a, u2 = b;
      BigInt lin = x[1] * u1 + x[2] * u2;
      BigInt cst = u1 * u1 + u2 * u2 + x[0] * u1 * u2;
      BigInt D = lin * lin - 4 * cst, r;
      if (!is_square(D, &r)) continue;
      if (mpz_odd_p(BigInt(lin + r).get_mpz_t())) continue;
      consider(u1, u2, BigInt((-lin - r) / 2));
      consider(u1, u2, BigInt((-lin + r) / 2));
    }
  if (best && eval_form(P, *best) != 0) throw std::logic_error("isotropic vector failed verification");
  return best;
}

IsotropyResult form_isotropic(const Point& P, long witness_bound) {
  BigInt k = P.level();
  if (k <= 4) throw std::invalid_argument("form_isotropic: level must exceed 4");
  IsotropyResult res;
  res.witness_bound = witness_bound;
  BigInt n = squarefree_part(k - 4);
  for (int j = 0; j < 3; ++j) {
    BigInt d = P.x[j] * P.x[j] - 4;
    if (d == 0) continue;
    BigInt m = squarefree_part(d);
    if (gcd(m, n) != 1) continue;
    res.coordinate = j;
    res.m = m;
    res.n = n;
    // f is isotropic iff <1, -m, -n> is; bring it to Legendre's sign pattern.
    std::array<BigInt, 3> co = {BigInt(1), BigInt(-m), BigInt(-n)};
    int pos = 0;
    for (auto& c : co) pos += c > 0;
    bool iso;
    if (pos == 0 || pos == 3) {
      iso = false;
    } else {
      if (pos == 2)
        for (auto& c : co) c = -c;
      std::sort(co.begin(), co.end(), [](const BigInt& u, const BigInt& v) { return u > v; });
      iso = legendre_isotropic(co[0], co[1], co[2]);
      if (!iso) {
        const BigInt &a = co[0], &b = co[1], &c = co[2];
        auto fp = failing_prime(BigInt(-a * b), BigInt(-c));
        if (!fp) fp = failing_prime(BigInt(-a * c), BigInt(-b));
        if (!fp) fp = failing_prime(BigInt(-b * c), a);
        res.obstruction_prime = fp;
      }
    }
    res.verdict = iso ? IsotropyResult::Isotropic : IsotropyResult::Anisotropic;
    if (iso) res.witness = find_isotropic_vector(P, witness_bound);
    return res;
  }
  return res;
}

Mat3 mtype_matrix(const Move& m, const Point& P) {
  const auto& x = P.x;
  Mat3 g{};
  for (auto& row : g) row.fill(BigInt(0));
  switch (m.kind) {
    case Move::Sign: {
      // Flipping x_i and x_j negates the basis vector shared by their pairs.
      // x1 <-> (1,2), x2 <-> (1,3), x3 <-> (2,3).
      int untouched = 3 - m.i - m.j;
      int idx = 2 - untouched;  // D_j = diag with -1 in slot of the pair-complement
      for (int i = 0; i < 3; ++i) g[i][i] = 1;
      g[idx][idx] = -1;
      return g;
    }
    case Move::Perm: {
      // x_k sits at the pair of basis indices other than 2-k. A coordinate
      // permutation sigma is induced by the basis permutation pi(i) with
      // 2 - pi(2 - k) = sigma(k).
      std::array<int, 3> pi{};
      for (int k = 0; k < 3; ++k) pi[2 - k] = 2 - m.sigma[k];
      for (int i = 0; i < 3; ++i) g[pi[i]][i] = 1;
      return g;
    }
    case Move::Vieta:
      break;
  }
  if (m.i == 0) {  // V1 = [[1,0,0],[0,-1,0],[0,x3,1]]
    g = Mat3{{{BigInt(1), BigInt(0), BigInt(0)}, {BigInt(0), BigInt(-1), BigInt(0)}, {BigInt(0), x[2], BigInt(1)}}};
  } else if (m.i == 1) {  // V2 = [[-1,0,0],[x1,1,0],[0,0,1]]
    g = Mat3{{{BigInt(-1), BigInt(0), BigInt(0)}, {x[0], BigInt(1), BigInt(0)}, {BigInt(0), BigInt(0), BigInt(1)}}};
  } else {  // V3 = [[1,0,x2],[0,1,0],[0,0,-1]]
    g = Mat3{{{BigInt(1), BigInt(0), x[1]}, {BigInt(0), BigInt(1), BigInt(0)}, {BigInt(0), BigInt(0), BigInt(-1)}}};
  }
  return g;
}

}  // namespace csl
