#include "csl/freeprod.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace csl {

namespace {

struct M2 {
  long a, b, c, d;
  M2 operator*(const M2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
};

// Smallest rotation of a bit sequence of length k.
bool is_min_rotation(uint32_t mask, int k) {
  uint32_t full = (k == 32) ? ~0u : ((1u << k) - 1);
  for (int r = 1; r < k; ++r) {
    uint32_t rot = ((mask >> r) | (mask << (k - r))) & full;
    if (rot < mask) return false;
  }
  return true;
}

std::vector<int> letters_of(const Word& uv) {
  std::vector<int> out;
  for (auto& s : uv)
    for (long i = 0; i < std::labs(s.e); ++i) out.push_back(s.g);
  return out;
}

struct DictEntry {
  Syllable syl;
  std::vector<int> letters;
};

std::vector<DictEntry> syllable_dictionary(const FreeProduct& G, long max_letters) {
  std::vector<DictEntry> dict;
  for (int g = 0; g < 2; ++g) {
    int ord = G.order(g);
    std::vector<long> exps;
    if (ord == 0)
      for (long e = 1; e <= max_letters; ++e) exps.push_back(e), exps.push_back(-e);
    else
      for (long e = 1; e < ord; ++e) exps.push_back(e);
    for (long e : exps) {
      auto L = letters_of(to_uv(G, Word{{g, e}}));
      if ((long)L.size() <= max_letters) dict.push_back({{g, e}, L});
    }
  }
  return dict;
}

std::optional<Word> parse_letters(const std::vector<int>& L, const std::vector<DictEntry>& dict) {
  // fail[pos][last+1]: no factorization of L[pos..] after a syllable of generator `last`.
  std::vector<std::array<bool, 3>> fail(L.size() + 1, {false, false, false});
  Word acc;
  std::function<bool(size_t, int)> go = [&](size_t pos, int last) {
    if (pos == L.size()) return true;
    if (fail[pos][last + 1]) return false;
    for (auto& d : dict) {
      if (d.syl.g == last || pos + d.letters.size() > L.size()) continue;
      if (!std::equal(d.letters.begin(), d.letters.end(), L.begin() + pos)) continue;
      acc.push_back(d.syl);
      if (go(pos + d.letters.size(), d.syl.g)) return true;
      acc.pop_back();
    }
    fail[pos][last + 1] = true;
    return false;
  };
  if (!go(0, -1)) return std::nullopt;
  return acc;
}

Word min_rotation(const Word& w) {
  Word best = w;
  for (size_t r = 1; r < w.size(); ++r) {
    Word rot(w.begin() + r, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + r);
    if (rot < best) best = rot;
  }
  return best;
}

}  // namespace

std::vector<Word> psl2_class_reps(long t) {
  if (t < 3) throw std::invalid_argument("psl2_class_reps: t must be at least 3");
  if (t > 26) throw std::length_error("psl2_class_reps: t above enumeration budget (26)");
  const M2 U{0, -1, 1, 0}, V{0, -1, 1, 1}, UV = U * V, UV2 = U * V * V;
  std::vector<Word> out;
  for (int k = 2; k <= t; ++k) {
    uint32_t full = (1u << k) - 1;
    for (uint32_t mask = 1; mask < full; ++mask) {  // both exponents present
      if (!is_min_rotation(mask, k)) continue;
      M2 P{1, 0, 0, 1};
      for (int i = 0; i < k; ++i) P = P * (((mask >> i) & 1) ? UV2 : UV);
      if (std::labs(P.a + P.d) != t) continue;
      Word w;
      for (int i = 0; i < k; ++i) {
        w.push_back({0, 1});
        w.push_back({1, ((mask >> i) & 1) ? 2 : 1});
      }
      out.push_back(w);
    }
  }
  return out;
}

std::vector<std::string> psl2_small_trace_classes(long t) {
  switch (t) {
    case 0: return {"u"};
    case 1: return {"v", "v2"};
    case 2: return {"(u v)^r, r != 0"};
    default: throw std::invalid_argument("psl2_small_trace_classes: t must be 0, 1 or 2");
  }
}

std::optional<Word> factor_through_embedding(const FreeProduct& G, const Word& uv) {
  auto L = letters_of(reduce_word(uv, kPSL2));
  return parse_letters(L, syllable_dictionary(G, (long)L.size()));
}

Alg1Result alg1_representatives(const FreeProduct& G, long t) {
  if (!is_supported(G)) throw std::invalid_argument("unsupported (m,n) = " + G.str());
  Alg1Result res;
  res.G = G;
  res.t = t;
  auto classes = psl2_class_reps(t);
  res.psl2_classes = classes.size();
  long max_len = 0;
  for (auto& c : classes) max_len = std::max(max_len, word_length(c));
  auto dict = syllable_dictionary(G, max_len);
  for (auto& c : classes) {
    auto L = letters_of(c);
    for (size_t r = 0; r < L.size(); ++r) {
      std::vector<int> rot(L.begin() + r, L.end());
      rot.insert(rot.end(), L.begin(), L.begin() + r);
      ++res.rotations_checked;
      auto ab = parse_letters(rot, dict);
      if (!ab) continue;
      Word w = cyclic_reduce(*ab, G);
      if (word_trace(G, w) != t) throw std::logic_error("alg1: factorization changed the trace");
      bool seen = false;
      for (auto& x : res.reps) seen = seen || cyclic_conjugacy_equal(x, w, G);
      if (!seen) res.reps.push_back(min_rotation(w));
    }
  }
  std::sort(res.reps.begin(), res.reps.end(), [](const Word& x, const Word& y) {
    return word_length(x) != word_length(y) ? word_length(x) < word_length(y) : x < y;
  });
  for (auto& w : res.reps)
    if (in_derived_subgroup(G, w)) res.derived.push_back(w);
  return res;
}

TraceFilterRow table1_trace_filter(const FreeProduct& G) {
  if (!is_supported(G)) throw std::invalid_argument("unsupported (m,n) = " + G.str());
  TraceFilterRow row;
  row.G = G;
  MatZ A = embedding_matrix(G, 0), B = embedding_matrix(G, 1);
  row.C = commutator(A, B);
  auto tomod = [](const MatZ& x, long q) {
    return Mat2L{mod(x.a, BigInt(q)).get_si(), mod(x.b, BigInt(q)).get_si(), mod(x.c, BigInt(q)).get_si(),
                 mod(x.d, BigInt(q)).get_si()};
  };
  if (G.n == 3 && G.m == 2) {
    // <A,B> = SL2(Z): read the scalars of H'' off the finite quotients.
    row.method = "finite-quotient";
    row.l = 1;
    for (long q = 2; q <= 16; q *= 2) {
      auto D = derived_subgroup_modq({tomod(A, q), tomod(B, q)}, q, 2);
      bool scalar = true;
      for (auto& x : D) scalar = scalar && x.b == 0 && x.c == 0 && x.a == x.d;
      if (!scalar) break;
      row.l = q;
      row.lambda.clear();
      for (auto& x : D) row.lambda.push_back(x.a);
    }
    std::sort(row.lambda.begin(), row.lambda.end());
  } else {
    // A^2 = -I when m = 2 and A^3 = -I when m = 3; <A,B>'' lies in the normal
    // closure of one commutator, scalar modulo l.
    row.method = "generator";
    if (G.m == 2)
      row.second_derived_gen = commutator(MatZ(A * A * B * A.inv()), MatZ(A * B));
    else
      row.second_derived_gen = commutator(MatZ(B * A), MatZ(A * B * A * A.inv()));
    const MatZ& g = row.second_derived_gen;
    auto scalar_mod = [&](long l) {
      return mod(g.b, BigInt(l)) == 0 && mod(g.c, BigInt(l)) == 0 && mod(BigInt(g.a - g.d), BigInt(l)) == 0;
    };
    row.l = 1;
    while (row.l < (1L << 20) && scalar_mod(row.l * 2)) row.l *= 2;
    if (row.l < 2) throw std::logic_error("table1_trace_filter: generator is not scalar modulo 2");
    long lam0 = mod(g.a, BigInt(row.l)).get_si();
    for (long cur = 1; std::find(row.lambda.begin(), row.lambda.end(), cur) == row.lambda.end();
         cur = cur * lam0 % row.l)
      row.lambda.push_back(cur);
    std::sort(row.lambda.begin(), row.lambda.end());
  }
  const long l = row.l;
  std::set<long> targets;
  long trc = row.C.tr().get_si();
  for (long lam : row.lambda) targets.insert(mod(lam * trc, l));
  if (targets.count(mod(2, l)))
    throw std::logic_error("table1_trace_filter: 2 +- 2^k admits infinitely many values");
  std::set<long> vals;
  for (long p = 1; p <= 4 * l; p *= 2)
    for (long v : {2 - p, 2 + p})
      if (targets.count(mod(v, l))) vals.insert(v);
  row.values.assign(vals.begin(), vals.end());
  return row;
}

}  // namespace csl
