#include "csl/freeprod.hpp"

#include <stdexcept>

namespace csl {

SRingElem SRingElem::monomial(const FreeProduct& G, long i, long j, const BigInt& coeff) {
  SRingElem s{G, {}};
  s.add_monomial(i, j, coeff);
  s.normalize();
  return s;
}

void SRingElem::add_monomial(long i, long j, const BigInt& coeff) {
  if (coeff != 0) c[{(int)i, j}] += coeff;
}

void SRingElem::normalize() {
  const int m = G.m, n = G.n;
  std::map<std::pair<int, long>, BigInt> r;
  for (auto& [k, v] : c) {
    long i = m ? mod((long)k.first, (long)m) : k.first;
    long j = n ? mod(k.second, (long)n) : k.second;
    r[{(int)i, j}] += v;
  }
  // x^{m-1} = -(1 + ... + x^{m-2}), likewise for y.
  if (m) {
    std::map<std::pair<int, long>, BigInt> s;
    for (auto& [k, v] : r) {
      if (k.first == m - 1)
        for (int i = 0; i < m - 1; ++i) s[{i, k.second}] -= v;
      else
        s[k] += v;
    }
    r.swap(s);
  }
  if (n) {
    std::map<std::pair<int, long>, BigInt> s;
    for (auto& [k, v] : r) {
      if (k.second == n - 1)
        for (long j = 0; j < n - 1; ++j) s[{k.first, j}] -= v;
      else
        s[k] += v;
    }
    r.swap(s);
  }
  c.clear();
  for (auto& [k, v] : r)
    if (v != 0) c[k] = v;
}

SRingElem SRingElem::times_monomial(long i, long j) const {
  SRingElem s{G, {}};
  for (auto& [k, v] : c) s.add_monomial(k.first + i, k.second + j, v);
  s.normalize();
  return s;
}

SRingElem SRingElem::operator+(const SRingElem& o) const {
  if (!(G == o.G)) throw std::invalid_argument("SRingElem: ring mismatch");
  SRingElem s = *this;
  for (auto& [k, v] : o.c) s.c[k] += v;
  s.normalize();
  return s;
}

SRingElem SRingElem::operator-() const { return scaled(BigInt(-1)); }

SRingElem SRingElem::scaled(const BigInt& f) const {
  SRingElem s{G, {}};
  for (auto& [k, v] : c) s.c[k] = v * f;
  s.normalize();
  return s;
}

bool SRingElem::operator==(const SRingElem& o) const { return G == o.G && c == o.c; }

std::string SRingElem::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (auto& [k, v] : c) {
    std::string mono;
    if (k.first) mono += k.first == 1 ? "x" : "x^" + std::to_string(k.first);
    if (k.second) {
      if (!mono.empty()) mono += "*";
      mono += k.second == 1 ? "y" : "y^" + std::to_string(k.second);
    }
    BigInt a = abs(v);
    std::string term = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty())
      out = (v < 0 ? "-" : "") + term;
    else
      out += (v < 0 ? " - " : " + ") + term;
  }
  return out;
}

namespace {
// 1 + y + ... + y^{j-1}; for j < 0, -(y^j + ... + y^{-1}).
void add_P(SRingElem& s, long i, long j, const BigInt& coeff) {
  if (s.G.n) j = mod(j, (long)s.G.n);
  if (j > 0)
    for (long l = 0; l < j; ++l) s.add_monomial(i, l, coeff);
  else
    for (long l = j; l < 0; ++l) s.add_monomial(i, l, -coeff);
}
}  // namespace

SRingElem metabelian_image(const FreeProduct& G, const Word& w) {
  if (G.m == 0) throw std::invalid_argument("metabelian_image: m must be finite");
  if (!in_derived_subgroup(G, w)) throw std::invalid_argument("metabelian_image: word is not in G'");
  SRingElem s = SRingElem::zero(G);
  long i = 0, j = 0;
  for (auto& syl : w) {
    if (syl.g == 1) {
      j += syl.e;
      if (G.n) j = mod(j, (long)G.n);
      continue;
    }
    for (long r = 0; r < std::labs(syl.e); ++r) {
      if (syl.e > 0) {
        add_P(s, i, j, BigInt(-1));
        i = (i + 1) % G.m;
      } else {
        i = mod(i - 1, (long)G.m);
        add_P(s, i, j, BigInt(1));
      }
    }
  }
  s.normalize();
  return s;
}

bool is_unit_in_S(const FreeProduct& G, const SRingElem& s) {
  if (!is_supported(G)) throw std::invalid_argument("unsupported (m,n) = " + G.str());
  if (s.c.empty()) return false;
  std::set<long> js;
  if (G.n) {
    for (long j = 0; j < G.n; ++j) js.insert(j);
  } else {
    for (auto& [k, v] : s.c) js.insert(k.second);
    if (js.size() != 1) return false;
  }
  for (int sg : {1, -1})
    for (long i = 0; i < G.m; ++i)
      for (long j : js)
        if (SRingElem::monomial(G, i, j, BigInt(sg)) == s) return true;
  return false;
}

std::vector<SRingElem> unit_monomials(const FreeProduct& G) {
  std::vector<SRingElem> out;
  long nj = G.n ? G.n : 3;
  for (int sg : {1, -1})
    for (long i = 0; i < G.m; ++i)
      for (long j = 0; j < nj; ++j) out.push_back(SRingElem::monomial(G, i, G.n ? j : j - 1, BigInt(sg)));
  return out;
}

}  // namespace csl
