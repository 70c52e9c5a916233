#include "csl/freeprod.hpp"

#include <atomic>
#include <climits>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace csl {

namespace {

inline long md(long a, long q) {
  a %= q;
  return a < 0 ? a + q : a;
}

Mat2L mul(const Mat2L& x, const Mat2L& y, long q) {
  return {md(x.a * y.a + x.b * y.c, q), md(x.a * y.b + x.b * y.d, q), md(x.c * y.a + x.d * y.c, q),
          md(x.c * y.b + x.d * y.d, q)};
}
Mat2L adjm(const Mat2L& x, long q) { return {x.d, md(-x.b, q), md(-x.c, q), x.a}; }
bool eqm(const Mat2L& x, const Mat2L& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

using Mat4 = std::array<std::array<long, 4>, 4>;

// Row and column operations invertible mod q bring A to diagonal form; the
// column operations are accumulated in C, so A y = 0 iff D (C^{-1} y) = 0.
void diagonalize_mod(Mat4& A, Mat4& C, long q) {
  for (auto& r : C) r.fill(0);
  for (int i = 0; i < 4; ++i) C[i][i] = 1 % q;
  auto col_axpy = [&](int dst, int src, long f) {  // col_dst -= f col_src
    for (int i = 0; i < 4; ++i) {
      A[i][dst] = md(A[i][dst] - f * A[i][src], q);
      C[i][dst] = md(C[i][dst] - f * C[i][src], q);
    }
  };
  auto row_axpy = [&](int dst, int src, long f) {
    for (int j = 0; j < 4; ++j) A[dst][j] = md(A[dst][j] - f * A[src][j], q);
  };
  for (int k = 0; k < 4; ++k) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      int pi = -1, pj = -1;
      for (int i = k; i < 4; ++i)
        for (int j = k; j < 4; ++j)
          if (A[i][j] && (pi < 0 || A[i][j] < A[pi][pj])) pi = i, pj = j;
      if (pi < 0) return;
      std::swap(A[k], A[pi]);
      for (int i = 0; i < 4; ++i) std::swap(A[i][k], A[i][pj]), std::swap(C[i][k], C[i][pj]);
      bool clean = true;
      const long p = A[k][k];
      for (int j = k + 1; j < 4; ++j) {
        col_axpy(j, k, A[k][j] / p);
        if (A[k][j]) clean = false;
      }
      for (int i = k + 1; i < 4; ++i) {
        row_axpy(i, k, A[i][k] / p);
        if (A[i][k]) clean = false;
      }
      if (clean) break;
    }
  }
}

std::mutex sl2_mu;
std::map<long, std::vector<Mat2L>> sl2_cache;

void check_q(long q, long max_q) {
  if (q < 2) throw std::invalid_argument("modulus must be at least 2");
  if (q > max_q) throw std::length_error("q = " + std::to_string(q) + " exceeds the budget " + std::to_string(max_q));
}

}  // namespace

std::vector<Mat2L> sl2_elements(long q) {
  {
    std::lock_guard<std::mutex> lock(sl2_mu);
    auto it = sl2_cache.find(q);
    if (it != sl2_cache.end()) return it->second;
  }
  std::vector<Mat2L> out;
  for (long a = 0; a < q; ++a)
    for (long b = 0; b < q; ++b)
      for (long c = 0; c < q; ++c)
        for (long d = 0; d < q; ++d)
          if (md(a * d - b * c, q) == 1 % q) out.push_back({a, b, c, d});
  std::lock_guard<std::mutex> lock(sl2_mu);
  sl2_cache[q] = out;
  return out;
}

CommutatorWitness commutator_test_modq(const Mat2L& Z_in, long q, long max_q) {
  check_q(q, max_q);
  Mat2L Z{md(Z_in.a, q), md(Z_in.b, q), md(Z_in.c, q), md(Z_in.d, q)};
  if (md(Z.a * Z.d - Z.b * Z.c, q) != 1 % q) throw std::invalid_argument("commutator_test_modq: det Z != 1 mod q");
  const auto elems = sl2_elements(q);
  const long n = (long)elems.size();
  std::atomic<long> best{LONG_MAX};
  std::atomic<uint64_t> checked{0};
  CommutatorWitness res;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 16)
  for (long idx = 0; idx < n; ++idx) {
    if (idx > best.load()) continue;
    const Mat2L& X = elems[idx];
    // Column k of L is X E_k - Z E_k X.
    Mat4 L, C;
    for (int k = 0; k < 4; ++k) {
      Mat2L E{k == 0, k == 1, k == 2, k == 3};
      Mat2L R = mul(X, E, q), S = mul(mul(Z, E, q), X, q);
      long col[4] = {md(R.a - S.a, q), md(R.b - S.b, q), md(R.c - S.c, q), md(R.d - S.d, q)};
      for (int i = 0; i < 4; ++i) L[i][k] = col[i];
    }
    diagonalize_mod(L, C, q);
    long step[4], cnt[4];
    for (int i = 0; i < 4; ++i) {
      long g = std::gcd(L[i][i], q);  // gcd(0, q) = q
      cnt[i] = g;
      step[i] = q / g;
    }
    uint64_t local = 0;
    bool hit = false;
    Mat2L Yhit{};
    for (long t0 = 0; t0 < cnt[0] && !hit; ++t0)
      for (long t1 = 0; t1 < cnt[1] && !hit; ++t1)
        for (long t2 = 0; t2 < cnt[2] && !hit; ++t2)
          for (long t3 = 0; t3 < cnt[3] && !hit; ++t3) {
            long z[4] = {t0 * step[0], t1 * step[1], t2 * step[2], t3 * step[3]};
            long y[4];
            for (int i = 0; i < 4; ++i)
              y[i] = md(C[i][0] * z[0] + C[i][1] * z[1] + C[i][2] * z[2] + C[i][3] * z[3], q);
            ++local;
            if (md(y[0] * y[3] - y[1] * y[2], q) == 1 % q) {
              hit = true;
              Yhit = {y[0], y[1], y[2], y[3]};
            }
          }
    checked += local;
    if (hit) {
      std::lock_guard<std::mutex> lock(mu);
      if (idx < best.load()) {
        best = idx;
        res.X = X;
        res.Y = Yhit;
      }
    }
  }
  res.found = best.load() != LONG_MAX;
  res.candidates_checked = checked.load();
  if (res.found && !eqm(mul(mul(mul(res.X, res.Y, q), adjm(res.X, q), q), adjm(res.Y, q), q), Z))
    throw std::logic_error("commutator_test_modq: witness failed verification");
  return res;
}

CommutatorWitness commutator_test_modq_reference(const Mat2L& Z_in, long q) {
  check_q(q, 16);
  Mat2L Z{md(Z_in.a, q), md(Z_in.b, q), md(Z_in.c, q), md(Z_in.d, q)};
  const auto elems = sl2_elements(q);
  CommutatorWitness res;
  for (auto& X : elems) {
    Mat2L Xi = adjm(X, q);
    for (auto& Y : elems) {
      ++res.candidates_checked;
      if (eqm(mul(mul(mul(X, Y, q), Xi, q), adjm(Y, q), q), Z)) {
        res.found = true;
        res.X = X;
        res.Y = Y;
        return res;
      }
    }
  }
  return res;
}

std::set<long> trace_commutator_image(long q, long max_q) {
  check_q(q, max_q);
  const auto elems = sl2_elements(q);
  const long n = (long)elems.size();
  std::vector<char> seen(q, 0);
#pragma omp parallel
  {
    std::vector<char> mine(q, 0);
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      const Mat2L& X = elems[i];
      long tx = md(X.a + X.d, q);
      for (const Mat2L& Y : elems) {
        long ty = (Y.a + Y.d) % q;
        long txy = (X.a * Y.a + X.b * Y.c + X.c * Y.b + X.d * Y.d) % q;
        mine[md(tx * tx + ty * ty + txy * txy - tx * ty % q * txy - 2, q)] = 1;
      }
    }
#pragma omp critical
    for (long r = 0; r < q; ++r) seen[r] |= mine[r];
  }
  std::set<long> out;
  for (long r = 0; r < q; ++r)
    if (seen[r]) out.insert(r);
  return out;
}

std::set<long> trace_commutator_image_reference(long q) {
  check_q(q, 16);
  const auto elems = sl2_elements(q);
  std::set<long> out;
  for (auto& X : elems) {
    Mat2L Xi = adjm(X, q);
    for (auto& Y : elems) {
      Mat2L W = mul(mul(mul(X, Y, q), Xi, q), adjm(Y, q), q);
      out.insert(md(W.a + W.d, q));
    }
  }
  return out;
}

std::vector<Mat2L> generated_subgroup(const std::vector<Mat2L>& gens_in, long q) {
  check_q(q, 101);
  auto enc = [q](const Mat2L& m) { return ((m.a * q + m.b) * q + m.c) * q + m.d; };
  std::vector<Mat2L> gens;
  for (auto& g : gens_in) gens.push_back({md(g.a, q), md(g.b, q), md(g.c, q), md(g.d, q)});
  std::vector<char> seen((size_t)(q * q * q * q), 0);
  std::vector<Mat2L> all = {{1 % q, 0, 0, 1 % q}};
  seen[enc(all[0])] = 1;
  for (size_t head = 0; head < all.size(); ++head)
    for (auto& g : gens) {
      Mat2L y = mul(all[head], g, q);
      if (!seen[enc(y)]) {
        seen[enc(y)] = 1;
        all.push_back(y);
      }
    }
  return all;
}

uint64_t generated_subgroup_order(const std::vector<Mat2L>& gens, long p) {
  return generated_subgroup(gens, p).size();
}

std::vector<Mat2L> derived_subgroup_modq(const std::vector<Mat2L>& gens, long q, int depth) {
  check_q(q, 16);
  std::vector<Mat2L> H = generated_subgroup(gens, q);
  for (int d = 0; d < depth; ++d) {
    std::set<std::array<long, 4>> comms;
    for (auto& x : H)
      for (auto& y : H) {
        Mat2L w = mul(mul(mul(x, y, q), adjm(x, q), q), adjm(y, q), q);
        comms.insert({w.a, w.b, w.c, w.d});
      }
    std::vector<Mat2L> cg;
    for (auto& c : comms) cg.push_back({c[0], c[1], c[2], c[3]});
    H = generated_subgroup(cg, q);
  }
  return H;
}

}  // namespace csl
