#pragma once
// Words in G_{m,n} = <a> * <b> (orders m, n; 0 stands for infinity), the
// embeddings G_{m,n} -> PSL2(Z), conjugacy representatives of a given trace,
// the metabelian image in S_{m,n}, and commutator tests in SL2(Z/q).

#include "csl/mat2.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace csl {

struct FreeProduct {
  int m = 2, n = 3;  // 0 = infinite order
  bool operator==(const FreeProduct& o) const { return m == o.m && n == o.n; }
  int order(int gen) const { return gen == 0 ? m : n; }
  std::string str() const;  // "(2,inf)"
};
inline const FreeProduct kPSL2{2, 3};  // <u> * <v>

bool is_supported(const FreeProduct& G);
FreeProduct parse_free_product(const std::string& m, const std::string& n);

struct Syllable {
  int g;   // 0 = a (or u), 1 = b (or v)
  long e;  // nonzero exponent
  bool operator==(const Syllable& o) const { return g == o.g && e == o.e; }
  bool operator<(const Syllable& o) const { return g != o.g ? g < o.g : e < o.e; }
};
using Word = std::vector<Syllable>;  // run-length encoded

// Letters with optional signed exponents: "a b3 a-1 b-2", "aba-1b-1", "a^-1".
Word parse_word(const std::string& s);
// Exponents as stored: in [1, ord-1] for finite order, signed otherwise.
std::string format_word(const Word& w, const char* names = "ab");

Word reduce_word(const Word& w, const FreeProduct& G);
bool is_reduced(const Word& w, const FreeProduct& G);
bool is_cyclically_reduced(const Word& w, const FreeProduct& G);
Word cyclic_reduce(const Word& w, const FreeProduct& G);
Word inverse_word(const Word& w, const FreeProduct& G);
Word concat(const Word& x, const Word& y, const FreeProduct& G);
Word word_power(const Word& w, long r, const FreeProduct& G);
long word_length(const Word& w);  // letters of L_{a,b}: sum of |e|
// Both words must be cyclically reduced.
bool cyclic_conjugacy_equal(const Word& w1, const Word& w2, const FreeProduct& G);
// Conjugate in G: cyclic reductions agree up to rotation.
bool conjugate_in(const Word& w1, const Word& w2, const FreeProduct& G);

// Exponent sums of a and b.
std::pair<long, long> exponent_sums(const Word& w);
bool in_derived_subgroup(const FreeProduct& G, const Word& w);

// Lifts of a, b to SL2(Z); for kPSL2 these are U and V.
MatZ embedding_matrix(const FreeProduct& G, int gen);
MatZ word_matrix(const FreeProduct& G, const Word& w);
BigInt word_trace(const FreeProduct& G, const Word& w);
// The reduced u,v-word of the image of w in PSL2(Z).
Word to_uv(const FreeProduct& G, const Word& w);

// a^i b^j a^-i b^-j, reduced.
Word commutator_word(const FreeProduct& G, long i, long j);
// "[a,b]", "[a,b2]", "[a2,b-1]" if w is conjugate to such a commutator.
std::optional<std::string> commutator_name(const FreeProduct& G, const Word& w);
std::optional<std::pair<long, long>> commutator_exponents(const FreeProduct& G, const Word& w);
// Commutators up to conjugacy as "a b a-1 b-1", other words via format_word.
std::string display_word(const FreeProduct& G, const Word& w);

// --- conjugacy representatives ---------------------------------------------

// u v^{s1} u v^{s2} ... u v^{sk}, s in {1,2}^k with k <= t, one per rotation
// class, |trace| = t. Requires 3 <= t <= 26.
std::vector<Word> psl2_class_reps(long t);
// Classes of trace 0, 1, 2 as descriptions.
std::vector<std::string> psl2_small_trace_classes(long t);

struct Alg1Result {
  FreeProduct G;
  long t = 0;
  size_t psl2_classes = 0;
  size_t rotations_checked = 0;
  std::vector<Word> reps;     // cyclically reduced, pairwise non-conjugate
  std::vector<Word> derived;  // reps in G'
};
Alg1Result alg1_representatives(const FreeProduct& G, long t);
// Parse a reduced u,v-word as a product of the images of syllables of G.
std::optional<Word> factor_through_embedding(const FreeProduct& G, const Word& uv);

// --- metabelian image --------------------------------------------------------

// Element of S_{m,n} = Z[x^+-1, y^+-1]/(psi_m(x), psi_n(y)) in the basis
// x^i y^j, 0 <= i <= m-2 and 0 <= j <= n-2 (any j when n is infinite).
struct SRingElem {
  FreeProduct G;
  std::map<std::pair<int, long>, BigInt> c;

  static SRingElem zero(const FreeProduct& G) { return SRingElem{G, {}}; }
  static SRingElem monomial(const FreeProduct& G, long i, long j, const BigInt& coeff = 1);
  void add_monomial(long i, long j, const BigInt& coeff);  // then call normalize()
  void normalize();
  SRingElem times_monomial(long i, long j) const;
  SRingElem operator+(const SRingElem& o) const;
  SRingElem operator-() const;
  SRingElem operator-(const SRingElem& o) const { return *this + (-o); }
  SRingElem scaled(const BigInt& s) const;
  bool operator==(const SRingElem& o) const;
  bool operator!=(const SRingElem& o) const { return !(*this == o); }
  std::string str() const;
};

SRingElem metabelian_image(const FreeProduct& G, const Word& w);
// s = +-x^i y^j for some i, j.
bool is_unit_in_S(const FreeProduct& G, const SRingElem& s);
// The candidates +-x^i y^j (i < m, j < n) as formal monomials, reduced.
std::vector<SRingElem> unit_monomials(const FreeProduct& G);

// --- congruence filter on traces ---------------------------------------------

struct TraceFilterRow {
  FreeProduct G;
  MatZ C;                   // [A, B]
  MatZ second_derived_gen;  // generator whose conjugates generate <A,B>''
  std::vector<long> lambda;  // scalar classes of <A,B>'' modulo l
  long l = 1;
  std::vector<long> values;  // 2 +- 2^k congruent to lambda Tr C mod l
  std::string method;        // "generator" or "finite-quotient"
};
TraceFilterRow table1_trace_filter(const FreeProduct& G);

// --- commutators in SL2(Z/q) -------------------------------------------------

using Mat2L = Mat2<long>;
std::vector<Mat2L> sl2_elements(long q);

struct CommutatorWitness {
  bool found = false;
  Mat2L X{}, Y{};
  uint64_t candidates_checked = 0;
};
// Solve X Y = Z Y X for Y per X in SL2(Z/q), keep det Y = 1.
CommutatorWitness commutator_test_modq(const Mat2L& Z, long q, long max_q = 64);
// Double enumeration over SL2(Z/q)^2.
CommutatorWitness commutator_test_modq_reference(const Mat2L& Z, long q);

// { Tr W(X,Y) mod q }, via Tr W = M(Tr X, Tr Y, Tr XY) - 2.
std::set<long> trace_commutator_image(long q, long max_q = 64);
// Explicit matrix commutators, serial.
std::set<long> trace_commutator_image_reference(long q);

// Order of the subgroup of SL2(Z/p) generated by gens.
uint64_t generated_subgroup_order(const std::vector<Mat2L>& gens, long p);
// Elements of the subgroup of SL2(Z/q) generated by gens.
std::vector<Mat2L> generated_subgroup(const std::vector<Mat2L>& gens, long q);
// H^(depth) for H = <gens> in SL2(Z/q), by brute force over commutators (q <= 16).
std::vector<Mat2L> derived_subgroup_modq(const std::vector<Mat2L>& gens, long q, int depth);

}  // namespace csl
