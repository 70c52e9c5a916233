#include "csl/markoff.hpp"

#include "csl/arith.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace csl {

std::string to_string(const Point& p) {
  return "(" + p.x[0].get_str() + "," + p.x[1].get_str() + "," + p.x[2].get_str() + ")";
}

Point parse_point(const std::string& s) {
  std::string t;
  for (char c : s)
    if (c != '(' && c != ')' && c != ' ') t.push_back(c);
  std::vector<std::string> parts;
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3) throw std::invalid_argument("point must have three coordinates: '" + s + "'");
  return Point{{parse_bigint(parts[0]), parse_bigint(parts[1]), parse_bigint(parts[2])}};
}

Move Move::inverse() const {
  if (kind != Perm) return *this;
  Move m = *this;
  for (int k = 0; k < 3; ++k) m.sigma[sigma[k]] = k;
  return m;
}

std::string Move::str() const {
  switch (kind) {
    case Vieta:
      return "Vieta" + std::to_string(i + 1);
    case Sign:
      return "SignChange(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    case Perm:
      return "Perm(" + std::to_string(sigma[0] + 1) + "," + std::to_string(sigma[1] + 1) + "," +
             std::to_string(sigma[2] + 1) + ")";
  }
  return "?";
}

bool Move::operator==(const Move& o) const {
  if (kind != o.kind) return false;
  if (kind == Perm) return sigma == o.sigma;
  if (kind == Vieta) return i == o.i;
  return i == o.i && j == o.j;
}

std::vector<Move> all_generators() {
  std::vector<Move> g = {Move::vieta(0), Move::vieta(1), Move::vieta(2),
                         Move::sign(0, 1), Move::sign(0, 2), Move::sign(1, 2)};
  std::array<int, 3> s = {0, 1, 2};
  while (std::next_permutation(s.begin(), s.end())) g.push_back(Move::perm(s));
  return g;
}

BigInt max_norm(const Point& p) {
  BigInt m = abs(p.x[0]);
  for (int i = 1; i < 3; ++i)
    if (abs(p.x[i]) > m) m = abs(p.x[i]);
  return m;
}

namespace {

// Canonical representative of the perm/double-sign class: sorted absolute
// values, with a single minus sign on the smallest entry when the product
// of coordinates is negative.
Point canonical_key(const Point& p) {
  std::array<BigInt, 3> a = {abs(p.x[0]), abs(p.x[1]), abs(p.x[2])};
  std::sort(a.begin(), a.end());
  int s = sgn(p.x[0]) * sgn(p.x[1]) * sgn(p.x[2]);
  if (s < 0) a[0] = -a[0];
  return Point{a};
}

// Moves (a permutation, then sign changes) taking p to canonical_key(p).
std::vector<Move> canonicalizing_moves(const Point& p) {
  std::vector<Move> moves;
  std::array<int, 3> sigma = {0, 1, 2};
  std::stable_sort(sigma.begin(), sigma.end(), [&](int u, int v) { return abs(p.x[u]) < abs(p.x[v]); });
  Point q = p;
  if (sigma != std::array<int, 3>{0, 1, 2}) {
    moves.push_back(Move::perm(sigma));
    q = apply_move(moves.back(), q);
  }
  auto flip = [&](int i, int j) {
    moves.push_back(Move::sign(i, j));
    q = apply_move(moves.back(), q);
  };
  if (q.x[1] < 0 && q.x[2] < 0)
    flip(1, 2);
  else if (q.x[1] < 0)
    flip(0, 1);
  else if (q.x[2] < 0)
    flip(0, 2);
  return moves;
}

}  // namespace

Reduction reduce(const Point& P, long max_steps) {
  Reduction r;
  Point cur = P;
  long steps = 0;
  auto step = [&](const Move& m) {
    cur = apply_move(m, cur);
    r.path.push_back(m);
    if (++steps > max_steps) throw std::runtime_error("descent stalled at " + to_string(cur));
  };
  for (;;) {
    // Greedy descent: largest strict decrease, lowest index on ties.
    for (;;) {
      BigInt N = max_norm(cur), bestN = N;
      int best = -1;
      for (int i = 0; i < 3; ++i) {
        BigInt n = max_norm(apply_move(Move::vieta(i), cur));
        if (n < bestN) {
          bestN = n;
          best = i;
        }
      }
      if (best < 0) break;
      step(Move::vieta(best));
    }
    // Explore the plateau of equal max-norm reachable by Vieta moves.
    BigInt N = max_norm(cur);
    std::map<Point, std::pair<Point, int>> parent;  // state -> (prev, vieta index)
    std::deque<Point> queue = {cur};
    parent[cur] = {cur, -1};
    std::optional<Point> lower;
    Point best = cur, bestKey = canonical_key(cur);
    const size_t plateau_cap = 100000;
    while (!queue.empty() && !lower) {
      Point s = queue.front();
      queue.pop_front();
      for (int i = 0; i < 3 && !lower; ++i) {
        Point t = apply_move(Move::vieta(i), s);
        BigInt n = max_norm(t);
        if (n > N || parent.count(t)) continue;
        parent[t] = {s, i};
        if (n < N) {
          lower = t;
          break;
        }
        queue.push_back(t);
        Point key = canonical_key(t);
        if (key < bestKey) {
          bestKey = key;
          best = t;
        }
        if (parent.size() > plateau_cap) throw std::runtime_error("descent plateau too large");
      }
    }
    Point target = lower ? *lower : best;
    std::vector<int> route;
    for (Point s = target; !(s == cur);) {
      auto& pr = parent[s];
      route.push_back(pr.second);
      s = pr.first;
    }
    std::reverse(route.begin(), route.end());
    for (int i : route) step(Move::vieta(i));
    if (!lower) break;
  }
  for (const Move& m : canonicalizing_moves(cur)) step(m);
  r.normal_form = cur;
  return r;
}

Point replay_from_normal_form(const Point& nf, const std::vector<Move>& path) {
  Point p = nf;
  for (auto it = path.rbegin(); it != path.rend(); ++it) p = apply_move(it->inverse(), p);
  return p;
}

BigInt default_class_bound(const BigInt& k) {
  // ceil(3 sqrt|k|) = ceil(sqrt(9|k|))
  BigInt t = isqrt(9 * abs(k));
  if (t * t < 9 * abs(k)) t += 1;
  return t + 3;
}

namespace {

// Integer roots x3 of x3^2 - x1 x2 x3 + (x1^2 + x2^2 - k) = 0.
void roots_x3(const BigInt& x1, const BigInt& x2, const BigInt& k, std::vector<BigInt>& out) {
  out.clear();
  BigInt s = x1 * x2;
  BigInt D = s * s - 4 * (x1 * x1 + x2 * x2 - k);
  BigInt r;
  if (!is_square(D, &r)) return;
  if (mpz_odd_p(BigInt(s + r).get_mpz_t())) return;
  out.push_back((s - r) / 2);
  if (r != 0) out.push_back((s + r) / 2);
}

}  // namespace

ClassData class_data(const BigInt& k, std::optional<BigInt> bound) {
  if (k == 0 || k == 4) throw std::invalid_argument("class_data: k must be generic (k != 0, 4)");
  ClassData cd;
  cd.k = k;
  cd.bound = bound ? *bound : default_class_bound(k);
  long B = to_i64(cd.bound);
  std::vector<Point> found;
  std::vector<BigInt> roots;
  for (long a = 0; a <= B; ++a)
    for (long b = a; b <= B; ++b) {
      roots_x3(BigInt(a), BigInt(b), k, roots);
      for (auto& c : roots) found.push_back(Point{{BigInt(a), BigInt(b), c}});
    }
  std::map<Point, std::vector<Point>> byclass;
  for (auto& p : found) byclass[reduce(p).normal_form].push_back(p);
  for (auto& [nf, pts] : byclass) {
    std::sort(pts.begin(), pts.end(), [](const Point& u, const Point& v) {
      BigInt nu = max_norm(u), nv = max_norm(v);
      return nu != nv ? nu < nv : u < v;
    });
    ClassData::Entry e;
    e.rep = nf;
    for (size_t i = 0; i < pts.size() && i < 8; ++i) e.orbit_sample.push_back(pts[i]);
    cd.classes.push_back(e);
  }
  return cd;
}

bool obstructed_mod16(const BigInt& t) {
  static const std::set<long> bad = {0, 1, 4, 5, 8, 9, 10, 12, 13};
  return bad.count(mod(t, BigInt(16)).get_si()) > 0;
}

bool obstructed_mod9(const BigInt& t) {
  static const std::set<long> bad = {1, 4, 5, 8};
  return bad.count(mod(t, BigInt(9)).get_si()) > 0;
}

bool admissible_k(const BigInt& k) {
  BigInt t = k - 2;
  if (mod(t, BigInt(4)) == 1) return false;
  long r9 = mod(t, BigInt(9)).get_si();
  return r9 != 1 && r9 != 4;
}

bool admissible_t(const BigInt& t) { return !obstructed_mod16(t) && !obstructed_mod9(t); }

std::vector<Point> expand_symmetries(const std::vector<Point>& pts) {
  std::set<Point> out;
  for (const Point& p : pts) {
    std::array<int, 3> s = {0, 1, 2};
    do {
      Point q{{p.x[s[0]], p.x[s[1]], p.x[s[2]]}};
      for (int f = 0; f < 4; ++f) {
        Point r = q;
        if (f == 1) r = apply_move(Move::sign(0, 1), q);
        if (f == 2) r = apply_move(Move::sign(0, 2), q);
        if (f == 3) r = apply_move(Move::sign(1, 2), q);
        out.insert(r);
      }
    } while (std::next_permutation(s.begin(), s.end()));
  }
  return {out.begin(), out.end()};
}

namespace {

bool ordered_by_abs(const Point& p) { return abs(p.x[0]) <= abs(p.x[1]) && abs(p.x[1]) <= abs(p.x[2]); }

std::vector<Point> finish_ordered(const std::vector<Point>& seeds) {
  std::vector<Point> all = expand_symmetries(seeds), out;
  for (auto& p : all)
    if (ordered_by_abs(p)) out.push_back(p);
  return out;
}

}  // namespace

std::vector<Point> search_integral(const BigInt& k, const BigInt& bound) {
  if (bound < 1) throw std::invalid_argument("search_integral: bound must be >= 1");
  std::vector<Point> seeds;
  const bool fast = bound <= 4000000 && fits_i64(k) && abs(k) < BigInt(1) << 60;
  if (!fast) {
    std::vector<BigInt> roots;
    for (BigInt a = 0; a <= bound; ++a)
      for (BigInt b = a; b <= bound; ++b) {
        roots_x3(a, b, k, roots);
        for (auto& c : roots)
          if (abs(c) >= b && abs(c) <= bound) seeds.push_back(Point{{a, b, c}});
      }
    return finish_ordered(seeds);
  }
  const long B = bound.get_si();
  const __int128 K = (__int128)k.get_si();
  std::vector<std::vector<std::array<long, 3>>> local(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 8)
  for (long a = 0; a <= B; ++a) {
    auto& mine = local[omp_get_thread_num()];
    for (long b = a; b <= B; ++b) {
      __int128 s = (__int128)a * b;
      __int128 D = s * s - 4 * ((__int128)a * a + (__int128)b * b - K);
      __int128 r;
      if (!is_square_i128(D, &r)) continue;
      if ((s + r) & 1) continue;
      __int128 c1 = (s - r) / 2, c2 = (s + r) / 2;
      for (__int128 c : {c1, c2}) {
        __int128 ac = c < 0 ? -c : c;
        if (ac >= b && ac <= B) mine.push_back({a, b, (long)c});
        if (r == 0) break;
      }
    }
  }
  for (auto& v : local)
    for (auto& q : v) seeds.push_back(pt(q[0], q[1], q[2]));
  return finish_ordered(seeds);
}

std::vector<Point> search_integral_reference(long k, long bound) {
  std::vector<Point> out;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) {
      if (std::labs(b) < std::labs(a)) continue;
      for (long c = -bound; c <= bound; ++c) {
        if (std::labs(c) < std::labs(b)) continue;
        if (a * a + b * b + c * c - a * b * c == k) out.push_back(pt(a, b, c));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LocalizedPoint> search_localized(const BigInt& k, const BigInt& ell, unsigned max_exp,
                                             const BigInt& bound) {
  if (!is_prime(ell) || ell == 2) throw std::invalid_argument("search_localized: ell must be an odd prime");
  auto ring = SRing::make({ell});
  std::vector<LocalizedPoint> out;
  auto to_loc = [&](const Point& num, unsigned a) {
    PointT<LocalizedInt> v;
    v.x[0] = LocalizedInt(ring, num.x[0]);
    std::vector<unsigned> e = {a};
    v.x[1] = LocalizedInt(ring, num.x[1], e);
    v.x[2] = LocalizedInt(ring, num.x[2], e);
    return v;
  };
  for (auto& p : search_integral(k, bound)) out.push_back({0, p, to_loc(p, 0)});
  if (!fits_i64(bound) || !fits_i64(ell)) throw std::invalid_argument("search_localized: parameters too large");
  const long B = bound.get_si(), l = ell.get_si();
  for (unsigned a = 1; a <= max_exp; ++a) {
    BigInt L = pow(ell, 2 * a);
    BigInt kl = k * L;
    if (abs(kl) >= BigInt(1) << 100 || L >= BigInt(1) << 60)
      throw std::invalid_argument("search_localized: k * ell^(2a) outside the 128-bit kernel");
    // build the 128-bit values from two 64-bit halves
    auto to128 = [](const BigInt& v) {
      BigInt hi = v >> 62, lo = v - (hi << 62);
      return ((__int128)hi.get_si() << 62) + (__int128)lo.get_si();
    };
    const __int128 L128 = to128(L), KL = to128(kl);
    std::vector<std::vector<std::array<long, 3>>> local(omp_get_max_threads());
#pragma omp parallel for schedule(dynamic, 8)
    for (long x1 = 0; x1 <= B; ++x1) {
      auto& mine = local[omp_get_thread_num()];
      for (long x2 = 1; x2 <= B; ++x2) {
        if (x2 % l == 0) continue;
        __int128 s = (__int128)x1 * x2;
        __int128 D = s * s - 4 * (L128 * x1 * x1 + (__int128)x2 * x2 - KL);
        __int128 r;
        if (!is_square_i128(D, &r)) continue;
        if ((s + r) & 1) continue;
        for (__int128 c : {(s - r) / 2, (s + r) / 2}) {
          __int128 ac = c < 0 ? -c : c;
          if (ac <= B && c % l != 0) mine.push_back({x1, x2, (long)c});
          if (r == 0) break;
        }
      }
    }
    std::set<Point> pts;
    for (auto& v : local)
      for (auto& q : v) {
        Point p = pt(q[0], q[1], q[2]);
        for (const Point& r : {p, apply_move(Move::sign(0, 1), p), apply_move(Move::sign(0, 2), p),
                               apply_move(Move::sign(1, 2), p)}) {
          pts.insert(r);
          pts.insert(Point{{r.x[0], r.x[2], r.x[1]}});
        }
      }
    for (auto& p : pts) out.push_back({a, p, to_loc(p, a)});
  }
  return out;
}

bool qr_type(const Point& P, const BigInt& p) {
  int qr = 0;
  for (int i = 0; i < 3; ++i)
    if (jacobi(BigInt(P.x[i] * P.x[i] - 4), p) == 1) ++qr;
  return qr >= 2;
}

E2GoodResult e2_good_test(const BigInt& k) {
  BigInt odd = k - 4;
  if (odd == 0) throw std::invalid_argument("e2_good_test: k = 4");
  while (mpz_even_p(odd.get_mpz_t())) odd /= 2;
  if (!is_squarefree(odd)) throw std::invalid_argument("e2_good_test: odd part of k-4 is not squarefree");
  std::vector<BigInt> primes;
  if (abs(odd) > 1) primes = prime_divisors(odd);
  E2GoodResult res;
  bool all = true;
  for (auto& e : class_data(k).classes) {
    E2GoodResult::PerClass pc;
    pc.rep = e.rep;
    for (auto& p : primes) {
      for (int i = 0; i < 3 && !pc.found; ++i)
        if (jacobi(BigInt(e.rep.x[i] * e.rep.x[i] - 4), p) == -1) {
          pc.found = true;
          pc.p = p;
          pc.x = e.rep.x[i];
        }
      if (pc.found) break;
    }
    all = all && pc.found;
    res.classes.push_back(pc);
  }
  res.verdict = (all && !res.classes.empty()) ? E2GoodResult::AllBad : E2GoodResult::Inconclusive;
  return res;
}

std::vector<Point> orbit_sample(const Point& P, size_t count, uint64_t seed, long max_norm_cap) {
  std::mt19937_64 rng(seed);
  auto gens = all_generators();
  std::vector<Point> out = {P};
  std::set<Point> seen = {P};
  Point cur = P;
  size_t guard = 0;
  while (out.size() < count && guard++ < 200000) {
    if (rng() % 12 == 0) cur = out[rng() % out.size()];
    Point nxt = apply_move(gens[rng() % gens.size()], cur);
    if (max_norm_cap > 0 && max_norm(nxt) > max_norm_cap) continue;
    cur = nxt;
    if (seen.insert(cur).second) out.push_back(cur);
  }
  return out;
}

}  // namespace csl
