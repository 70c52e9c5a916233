#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "csl/arith.hpp"
#include "csl/certify.hpp"
#include "test_util.hpp"

#include <set>

using namespace csl;
using testutil::rand_int;

namespace {

Mat2L mulq(const Mat2L& x, const Mat2L& y, long q) {
  return {(x.a * y.a + x.b * y.c) % q, (x.a * y.b + x.b * y.d) % q, (x.c * y.a + x.d * y.c) % q,
          (x.c * y.b + x.d * y.d) % q};
}
Mat2L adjq(const Mat2L& x, long q) { return {x.d, (q - x.b) % q, (q - x.c) % q, x.a}; }
Mat2L from_json_mat(const json& j) {
  return {j[0][0].get<long>(), j[0][1].get<long>(), j[1][0].get<long>(), j[1][1].get<long>()};
}

bool has_check(const Certificate& c, const std::string& name, bool result) {
  auto* k = c.find(name);
  return k && k->result == result;
}

// Random element of SL2(Z) whose trace satisfies pred.
template <class P>
MatZ random_with_trace(P pred) {
  for (;;) {
    MatZ Z = testutil::random_sl2z(rand_int(2, 7), 4);
    if (pred(Z.tr())) return Z;
  }
}

}  // namespace

TEST_CASE("integral Hasse failures") {
  auto c102 = certify_hfz(102);
  CHECK(c102.kind == "E3FailureZ");
  CHECK(c102.parameters["family"] == "i");
  CHECK(c102.parameters["nu"] == 7);
  CHECK(c102.conclusion);
  CHECK(has_check(c102, "search_integral_empty", true));
  REQUIRE(c102.find("search_integral_empty")->bound);
  CHECK(*c102.find("search_integral_empty")->bound == "10000");

  auto c24 = certify_hfz(24);
  CHECK(c24.kind == "E3FailureZ");
  CHECK(c24.parameters["family"] == "iii");
  CHECK(c24.conclusion);

  auto c20 = certify_hfz(20);
  CHECK(c20.kind == "NotApplicable");
  CHECK(c20.parameters["requested_kind"] == "E3FailureZ");
  CHECK(!c20.conclusion);
}

TEST_CASE("integral certificates are sound against search") {
  // Whenever every hypothesis holds, the search finds nothing; a point found
  // always falsifies the conclusion.
  int certified = 0, refuted = 0;
  for (long nu = 1; nu <= 40; ++nu) {
    BigInt k = 4 + 2 * nu * nu;
    auto c = certify_hfz(k, {BigInt(300)});
    if (c.kind != "E3FailureZ") continue;
    auto pts = search_integral(k, 300);
    bool hyps = true;
    for (auto& ch : c.checks)
      if (ch.name != "search_integral_empty") hyps = hyps && ch.result;
    CHECK(c.conclusion == (hyps && pts.empty()));
    if (hyps) CHECK_MESSAGE(pts.empty(), "k=" << k);
    for (auto& P : pts) CHECK(P.level() == k);
    certified += c.conclusion;
    refuted += !pts.empty();
  }
  CHECK(certified > 0);
  CHECK(refuted > 0);
}

TEST_CASE("Hasse failures over Z[1/ell]") {
  auto na = certify_sint_failure(102, 7);
  CHECK(na.kind == "NotApplicable");
  CHECK(na.parameters["failed_clauses"] == json::array({"nu_mod_9"}));
  CHECK(!na.conclusion);

  auto ok = certify_sint_failure(386424, 19);
  CHECK(ok.kind == "E3FailureSInt");
  CHECK(ok.parameters["family"] == "HFTrace0");
  CHECK(ok.parameters["nu"] == 139);
  CHECK(ok.conclusion);
  CHECK(has_check(ok, "search_localized_empty", true));

  auto l5 = certify_sint_failure(386424, 5);
  CHECK(l5.kind == "NotApplicable");
  CHECK(l5.parameters["failed_clauses"] == json::array({"ell_mod_5"}));

  CHECK_THROWS_AS(certify_sint_failure(386424, 9), std::invalid_argument);
  CHECK_THROWS_AS(certify_sint_failure(386424, 3), std::invalid_argument);

  auto e2 = certify_e2_failure(386422, 19);
  CHECK(e2.kind == "E2Failure");
  CHECK(has_check(e2, "admissible_t", true));
  CHECK(e2.conclusion);
}

TEST_CASE("explicit local-global failure") {
  CHECK_THROWS_AS(build_hfe1_matrix(4, 19), std::invalid_argument);
  CHECK_THROWS_AS(build_hfe1_matrix(139, 7), std::invalid_argument);
  MatZ A = build_hfe1_matrix(139, 19);
  CHECK(A.det() == 1);
  CHECK(A.tr() == 2 + 20 * 139 * 139);

  auto c = verify_hfe1(139, 19);
  CHECK(c.kind == "HFE1");
  CHECK(c.conclusion);
  for (auto& ch : c.checks) CHECK_MESSAGE(ch.result, ch.name);
  // Re-multiply every witness.
  for (long q : default_hfe1_moduli()) {
    auto* ch = c.find("commutator_mod_" + std::to_string(q));
    REQUIRE(ch);
    Mat2L X = from_json_mat(ch->data["X"]), Y = from_json_mat(ch->data["Y"]);
    Mat2L W = mulq(mulq(mulq(X, Y, q), adjq(X, q), q), adjq(Y, q), q);
    CHECK(W == reduce_mod(A, q));
  }
  CHECK(c.parameters["truncation"].get<std::string>().find("up to 32") != std::string::npos);

  // Negative control: a different matrix of the same shape fails.
  MatZ T = A * matz(1, 1, 0, 1);
  auto bad = verify_hfe1_matrix(T, 139, 19, default_hfe1_moduli());
  CHECK(!bad.conclusion);
  CHECK(has_check(bad, "trace", false));
}

TEST_CASE("certificates replay identically") {
  std::vector<Certificate> certs = {certify_hfz(24), certify_hfz(20), certify_sint_failure(102, 7),
                                    certify_sint_failure(386424, 19), certify_e2_failure(386422, 19),
                                    verify_hfe1(139, 19)};
  for (auto& c : certs) {
    json j = c.to_json();
    CHECK(Certificate::from_json(j).to_json() == j);
    auto r = replay_certificate(j);
    CHECK_MESSAGE(r.identical, c.kind);
    for (auto& m : r.mismatches) MESSAGE(m);
  }
  // A flipped result is caught.
  json j = certify_hfz(24).to_json();
  j["conclusion"] = false;
  CHECK(!replay_certificate(j).identical);
  json h = verify_hfe1(139, 19).to_json();
  h["checks"][0]["data"]["det"] = 2;
  CHECK(!replay_certificate(h).identical);
}

TEST_CASE("congruence obstruction catalogue") {
  auto qs = [](const MatZ& Z) {
    std::vector<long> out;
    for (auto& o : catalogue_congruence_obstructions(Z)) {
      CHECK(o.confirmed);
      out.push_back(o.q);
    }
    return out;
  };
  MatZ tr4 = matz(3, 1, 2, 1);
  CHECK(tr4.tr() == 4);
  CHECK(qs(tr4) == std::vector<long>{4, 9, 16, 2});
  MatZ tr10 = matz(9, 1, 8, 1);
  CHECK(tr10.tr() == 10);
  CHECK(qs(tr10) == std::vector<long>{9, 16, 2, 4});
  MatZ tr15 = matz(14, 1, 13, 1);
  CHECK(qs(tr15).empty());
  CHECK_THROWS_AS(catalogue_congruence_obstructions(matz(2, 0, 0, 1)), std::invalid_argument);
}

TEST_CASE("catalogue agrees with brute-force commutator tests") {
  struct Cls {
    const char* name;
    long q;
    bool (*pred)(const BigInt&);
  };
  const Cls classes[] = {
      {"4 | t", 4, [](const BigInt& t) { return mod(t, BigInt(4)) == 0; }},
      {"t = +-1,+-4 mod 9", 9, [](const BigInt& t) { return obstructed_mod9(t); }},
      {"t excluded mod 16", 16, [](const BigInt& t) { return obstructed_mod16(t); }},
  };
  for (auto& cl : classes) {
    for (int i = 0; i < 100; ++i) {
      MatZ Z = random_with_trace(cl.pred);
      auto obs = catalogue_congruence_obstructions(Z);
      bool listed = false;
      for (auto& o : obs) listed = listed || o.q == cl.q;
      REQUIRE_MESSAGE(listed, cl.name);
      Mat2L Zq = reduce_mod(Z, cl.q);
      REQUIRE(!commutator_test_modq(Zq, cl.q).found);
      if (i < 3) REQUIRE(!commutator_test_modq_reference(Zq, cl.q).found);
    }
  }
  // Every listed obstruction is a genuine non-commutator modulo q.
  for (int i = 0; i < 300; ++i) {
    MatZ Z = testutil::random_sl2z(rand_int(1, 7), 4);
    for (auto& o : catalogue_congruence_obstructions(Z)) {
      REQUIRE(o.confirmed);
      REQUIRE(!commutator_test_modq(reduce_mod(Z, o.q), o.q).found);
    }
  }
}

TEST_CASE("prime factor hypothesis") {
  std::vector<BigInt> bad;
  CHECK(prime_factors_pm1(139, 20, &bad));
  CHECK(bad.empty());
  CHECK(!prime_factors_pm1(4, 20, &bad));
  CHECK(bad == std::vector<BigInt>{2});
  CHECK(prime_factors_pm1(1, 8));
  CHECK(prime_factors_pm1(7 * 17, 8));
  CHECK(!prime_factors_pm1(3 * 7, 8));
}
