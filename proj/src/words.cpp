#include "csl/freeprod.hpp"

#include <cctype>
#include <stdexcept>

namespace csl {

std::string FreeProduct::str() const {
  auto s = [](int o) { return o == 0 ? std::string("inf") : std::to_string(o); };
  return "(" + s(m) + "," + s(n) + ")";
}

bool is_supported(const FreeProduct& G) {
  return G == FreeProduct{2, 3} || G == FreeProduct{2, 0} || G == FreeProduct{3, 3} || G == FreeProduct{3, 0};
}

FreeProduct parse_free_product(const std::string& m, const std::string& n) {
  auto p = [](const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "oo" || s == "0") return 0;
    return std::stoi(s);
  };
  FreeProduct G{p(m), p(n)};
  if (!is_supported(G)) throw std::invalid_argument("unsupported (m,n) = " + G.str());
  return G;
}

Word parse_word(const std::string& s) {
  Word w;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace((unsigned char)ch) || ch == '*' || ch == '.') {
      ++i;
      continue;
    }
    int g;
    if (ch == 'a' || ch == 'u')
      g = 0;
    else if (ch == 'b' || ch == 'v')
      g = 1;
    else
      throw std::invalid_argument(std::string("bad letter '") + ch + "' in word: " + s);
    ++i;
    if (i < s.size() && s[i] == '^') ++i;
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
    long e = 1;
    if (k > j) {
      e = std::stol(s.substr(i, k - i));
    } else if (j > i) {
      throw std::invalid_argument("sign without exponent in word: " + s);
    }
    i = k;
    w.push_back({g, e});
  }
  return w;
}

std::string format_word(const Word& w, const char* names) {
  if (w.empty()) return "1";
  std::string out;
  for (auto& s : w) {
    if (!out.empty()) out += ' ';
    out += names[s.g];
    if (s.e != 1) out += std::to_string(s.e);
  }
  return out;
}

namespace {
long normalize_exp(long e, int ord) {
  if (ord == 0) return e;
  long r = e % ord;
  return r < 0 ? r + ord : r;
}
}  // namespace

Word reduce_word(const Word& w, const FreeProduct& G) {
  Word st;
  for (auto s : w) {
    s.e = normalize_exp(s.e, G.order(s.g));
    if (s.e == 0) continue;
    if (!st.empty() && st.back().g == s.g) {
      st.back().e = normalize_exp(st.back().e + s.e, G.order(s.g));
      if (st.back().e == 0) st.pop_back();
    } else {
      st.push_back(s);
    }
  }
  return st;
}

bool is_reduced(const Word& w, const FreeProduct& G) { return reduce_word(w, G) == w; }

bool is_cyclically_reduced(const Word& w, const FreeProduct& G) {
  if (!is_reduced(w, G)) return false;
  return w.size() <= 1 || w.front().g != w.back().g;
}

Word cyclic_reduce(const Word& w_in, const FreeProduct& G) {
  Word w = reduce_word(w_in, G);
  while (w.size() >= 2 && w.front().g == w.back().g) {
    Syllable last = w.back();
    w.pop_back();
    w.front().e = normalize_exp(w.front().e + last.e, G.order(last.g));
    if (w.front().e == 0) w.erase(w.begin());
  }
  return w;
}

Word inverse_word(const Word& w, const FreeProduct& G) {
  Word r(w.rbegin(), w.rend());
  for (auto& s : r) s.e = -s.e;
  return reduce_word(r, G);
}

Word concat(const Word& x, const Word& y, const FreeProduct& G) {
  Word r = x;
  r.insert(r.end(), y.begin(), y.end());
  return reduce_word(r, G);
}

Word word_power(const Word& w, long r, const FreeProduct& G) {
  Word base = r < 0 ? inverse_word(w, G) : reduce_word(w, G);
  Word out;
  for (long i = 0; i < std::labs(r); ++i) out.insert(out.end(), base.begin(), base.end());
  return reduce_word(out, G);
}

long word_length(const Word& w) {
  long n = 0;
  for (auto& s : w) n += std::labs(s.e);
  return n;
}

bool cyclic_conjugacy_equal(const Word& w1, const Word& w2, const FreeProduct& G) {
  if (!is_cyclically_reduced(w1, G) || !is_cyclically_reduced(w2, G))
    throw std::invalid_argument("cyclic_conjugacy_equal: words must be cyclically reduced");
  if (w1.size() != w2.size()) return false;
  size_t n = w1.size();
  if (n == 0) return true;
  for (size_t r = 0; r < n; ++r) {
    bool eq = true;
    for (size_t i = 0; i < n && eq; ++i) eq = w1[(i + r) % n] == w2[i];
    if (eq) return true;
  }
  return false;
}

bool conjugate_in(const Word& w1, const Word& w2, const FreeProduct& G) {
  return cyclic_conjugacy_equal(cyclic_reduce(w1, G), cyclic_reduce(w2, G), G);
}

std::pair<long, long> exponent_sums(const Word& w) {
  long sa = 0, sb = 0;
  for (auto& s : w) (s.g == 0 ? sa : sb) += s.e;
  return {sa, sb};
}

bool in_derived_subgroup(const FreeProduct& G, const Word& w) {
  auto [sa, sb] = exponent_sums(w);
  auto ok = [](long s, int ord) { return ord == 0 ? s == 0 : s % ord == 0; };
  return ok(sa, G.m) && ok(sb, G.n);
}

namespace {
const MatZ U = matz(0, -1, 1, 0);
const MatZ V = matz(0, -1, 1, 1);
}  // namespace

MatZ embedding_matrix(const FreeProduct& G, int gen) {
  if (!is_supported(G)) throw std::invalid_argument("unsupported (m,n) = " + G.str());
  if (G == FreeProduct{2, 3}) return gen == 0 ? U : V;
  if (G == FreeProduct{2, 0}) return gen == 0 ? U : V * U * V;
  if (G == FreeProduct{3, 3}) return gen == 0 ? V : U * V * mpow(U, 3);
  return gen == 0 ? V : mpow(U * V, 3) * U;  // (3,inf)
}

MatZ word_matrix(const FreeProduct& G, const Word& w) {
  MatZ A = embedding_matrix(G, 0), B = embedding_matrix(G, 1);
  MatZ r = MatZ::identity(BigInt(0));
  for (auto& s : w) r = r * mpow(s.g == 0 ? A : B, s.e);
  return r;
}

BigInt word_trace(const FreeProduct& G, const Word& w) { return abs(word_matrix(G, w).tr()); }

namespace {
Word uv_image_of_generator(const FreeProduct& G, int gen) {
  if (G == FreeProduct{2, 3}) return Word{{gen, 1}};
  if (G == FreeProduct{2, 0}) return gen == 0 ? parse_word("u") : parse_word("v u v");
  if (G == FreeProduct{3, 3}) return gen == 0 ? parse_word("v") : parse_word("u v u");
  if (G == FreeProduct{3, 0}) return gen == 0 ? parse_word("v") : parse_word("u v u v u v u");
  throw std::invalid_argument("unsupported (m,n) = " + G.str());
}
}  // namespace

Word to_uv(const FreeProduct& G, const Word& w) {
  Word out;
  for (auto& s : w) {
    Word p = word_power(uv_image_of_generator(G, s.g), s.e, kPSL2);
    out.insert(out.end(), p.begin(), p.end());
  }
  return reduce_word(out, kPSL2);
}

Word commutator_word(const FreeProduct& G, long i, long j) {
  return reduce_word(Word{{0, i}, {1, j}, {0, -i}, {1, -j}}, G);
}

std::optional<std::pair<long, long>> commutator_exponents(const FreeProduct& G, const Word& w) {
  auto range = [](int ord) {
    std::vector<long> r;
    if (ord == 0)
      for (long e : {1, -1, 2, -2, 3, -3}) r.push_back(e);
    else
      for (long e = 1; e < ord; ++e) r.push_back(e);
    return r;
  };
  Word cw = cyclic_reduce(w, G);
  for (long i : range(G.m))
    for (long j : range(G.n))
      if (conjugate_in(commutator_word(G, i, j), cw, G)) return std::pair{i, j};
  return std::nullopt;
}

namespace {
std::string opt_exp(long x) { return x == 1 ? std::string() : std::to_string(x); }
}  // namespace

std::optional<std::string> commutator_name(const FreeProduct& G, const Word& w) {
  auto ij = commutator_exponents(G, w);
  if (!ij) return std::nullopt;
  return "[a" + opt_exp(ij->first) + ",b" + opt_exp(ij->second) + "]";
}

std::string display_word(const FreeProduct& G, const Word& w) {
  auto ij = commutator_exponents(G, w);
  if (!ij) return format_word(w);
  auto [i, j] = *ij;
  return "a" + opt_exp(i) + " b" + opt_exp(j) + " a" + opt_exp(-i) + " b" + opt_exp(-j);
}

}  // namespace csl
