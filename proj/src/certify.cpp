#include "csl/certify.hpp"

#include "csl/arith.hpp"

#include <chrono>
#include <stdexcept>

namespace csl {

namespace {

json jbig(const BigInt& v) {
  if (fits_i64(v)) return json(to_i64(v));
  return json(v.get_str());
}

BigInt from_jbig(const json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  return BigInt(j.get<long>());
}

json jmat(const MatZ& A) { return json::array({json::array({jbig(A.a), jbig(A.b)}), json::array({jbig(A.c), jbig(A.d)})}); }
json jmat(const Mat2L& A) { return json::array({json::array({A.a, A.b}), json::array({A.c, A.d})}); }

MatZ from_jmat(const json& j) {
  return MatZ{from_jbig(j[0][0]), from_jbig(j[0][1]), from_jbig(j[1][0]), from_jbig(j[1][1])};
}

json jfactor(const BigInt& n) {
  json out = json::array();
  if (n == 0) return out;
  for (auto& [p, e] : factorize(n)) out.push_back(json::array({jbig(p), e}));
  return out;
}

json jpoint(const Point& P) { return json::array({jbig(P.x[0]), jbig(P.x[1]), jbig(P.x[2])}); }

// n = (k - base)/coef when that is a nonnegative perfect square.
std::optional<BigInt> nu_of(const BigInt& k, long coef) {
  BigInt r = k - 4;
  if (r < 0 || r % coef != 0) return std::nullopt;
  BigInt s = r / coef, root;
  if (!is_square(s, &root)) return std::nullopt;
  return root;
}

bool pm1(const BigInt& x, long m) {
  BigInt r = mod(x, BigInt(m));
  return r == 1 || r == m - 1;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Check factor_check(const BigInt& nu, long m) {
  std::vector<BigInt> bad;
  bool ok = prime_factors_pm1(nu, m, &bad);
  Check c{"prime_factors", "every prime factor of nu is +-1 mod " + std::to_string(m), "closed-form", ok, json::object(),
          std::nullopt};
  c.data["nu"] = jbig(nu);
  c.data["factorization"] = jfactor(nu);
  json off = json::array();
  for (auto& p : bad) off.push_back(jbig(p));
  c.data["offenders"] = off;
  return c;
}

Certificate not_applicable(const std::string& requested, json params, std::vector<Check> checks, double ms) {
  Certificate c;
  c.kind = "NotApplicable";
  params["requested_kind"] = requested;
  c.parameters = std::move(params);
  c.checks = std::move(checks);
  c.conclusion = false;
  c.runtime_ms = ms;
  return c;
}

}  // namespace

bool prime_factors_pm1(const BigInt& n, long m, std::vector<BigInt>* offenders) {
  if (n == 0) throw std::invalid_argument("prime_factors_pm1: n = 0");
  bool ok = true;
  for (auto& [p, e] : factorize(n))
    if (!pm1(p, m)) {
      ok = false;
      if (offenders) offenders->push_back(p);
    }
  return ok;
}

Mat2L reduce_mod(const MatZ& A, long q) {
  BigInt Q(q);
  return Mat2L{to_i64(mod(A.a, Q)), to_i64(mod(A.b, Q)), to_i64(mod(A.c, Q)), to_i64(mod(A.d, Q))};
}

// --- Certificate --------------------------------------------------------------

void Certificate::finalize() {
  conclusion = !checks.empty();
  for (auto& c : checks) conclusion = conclusion && c.result;
}

const Check* Certificate::find(const std::string& name) const {
  for (auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

json Certificate::to_json() const {
  json j;
  j["schema_version"] = "1";
  j["kind"] = kind;
  j["parameters"] = parameters;
  json cs = json::array();
  for (auto& c : checks) {
    json e;
    e["name"] = c.name;
    e["statement"] = c.statement;
    e["method"] = c.method;
    e["result"] = c.result;
    e["data"] = c.data;
    if (c.bound) e["bound"] = *c.bound;
    cs.push_back(e);
  }
  j["checks"] = cs;
  j["conclusion"] = conclusion;
  j["runtime_ms"] = runtime_ms;
  return j;
}

Certificate Certificate::from_json(const json& j) {
  if (!j.is_object() || j.value("schema_version", "") != "1") throw std::invalid_argument("certificate: bad schema");
  Certificate c;
  c.kind = j.at("kind").get<std::string>();
  c.parameters = j.at("parameters");
  for (auto& e : j.at("checks")) {
    Check k;
    k.name = e.at("name").get<std::string>();
    k.statement = e.at("statement").get<std::string>();
    k.method = e.at("method").get<std::string>();
    k.result = e.at("result").get<bool>();
    k.data = e.at("data");
    if (e.contains("bound")) k.bound = e["bound"].get<std::string>();
    c.checks.push_back(std::move(k));
  }
  c.conclusion = j.at("conclusion").get<bool>();
  c.runtime_ms = j.value("runtime_ms", 0.0);
  return c;
}

// --- Hasse failures over Z ----------------------------------------------------

Certificate certify_hfz(const BigInt& k, const HfzOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  json params;
  params["k"] = jbig(k);
  params["search_bound"] = jbig(opt.search_bound);

  struct Family {
    const char* name;
    long coef, mod;
  };
  const Family fams[] = {{"i", 2, 8}, {"ii", 12, 12}, {"iii", 20, 20}};
  std::vector<Check> shape;
  const Family* hit = nullptr;
  BigInt nu;
  for (auto& f : fams) {
    auto v = nu_of(k, f.coef);
    Check c{std::string("family_") + f.name, "k = 4 + " + std::to_string(f.coef) + " nu^2 with nu >= 1", "closed-form",
            v && *v > 0, json::object(), std::nullopt};
    if (v) c.data["nu"] = jbig(*v);
    shape.push_back(c);
    if (c.result && !hit) {
      hit = &f;
      nu = *v;
    }
  }
  if (!hit) return not_applicable("E3FailureZ", params, shape, ms_since(t0));

  Certificate cert;
  cert.kind = "E3FailureZ";
  params["family"] = hit->name;
  params["nu"] = jbig(nu);
  // Informational: admissibility is not a hypothesis of the integral families.
  params["admissible_k"] = admissible_k(k);
  cert.parameters = params;
  for (auto& c : shape)
    if (c.name == std::string("family_") + hit->name) cert.add(c);
  cert.add(factor_check(nu, hit->mod));
  if (hit->coef == 12) {
    BigInt r = mod(BigInt(nu * nu), BigInt(32));
    Check c{"nu_squared_mod_32", "nu^2 = 25 mod 32", "closed-form", r == 25, json::object(), std::nullopt};
    c.data["residue"] = jbig(r);
    cert.add(c);
  }
  auto pts = search_integral(k, opt.search_bound);
  Check s{"search_integral_empty", "no integer point with |x1| <= |x2| <= |x3| <= bound", "exhaustive", pts.empty(),
          json::object(), opt.search_bound.get_str()};
  s.data["points_found"] = pts.size();
  if (!pts.empty()) s.data["first_point"] = jpoint(pts.front());
  cert.add(s);
  cert.finalize();
  cert.runtime_ms = ms_since(t0);
  return cert;
}

// --- Hasse failures over Z[1/ell] ---------------------------------------------

Certificate certify_sint_failure(const BigInt& k, const BigInt& ell, const SIntOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("certify_sint_failure: ell must be prime");
  if (ell == 2 || ell == 3) throw std::invalid_argument("certify_sint_failure: ell must not divide 6");
  json params;
  params["k"] = jbig(k);
  params["ell"] = jbig(ell);
  params["max_exp"] = opt.max_exp;
  params["search_bound"] = jbig(opt.bound);

  auto nu1 = nu_of(k, 2), nu0 = nu_of(k, 20);
  std::vector<Check> hyps;
  std::string family;
  BigInt nu;
  if (nu1 && *nu1 > 0) {
    family = "HF1";
    nu = *nu1;
    hyps.push_back({"family_shape", "k = 4 + 2 nu^2", "closed-form", true, json{{"nu", jbig(nu)}}, std::nullopt});
    BigInt l8 = mod(ell, BigInt(8));
    hyps.push_back(
        {"ell_mod_8", "ell = +-1 mod 8", "closed-form", pm1(ell, 8), json{{"residue", jbig(l8)}}, std::nullopt});
    hyps.push_back(factor_check(nu, 8));
    BigInt r9 = mod(nu, BigInt(9));
    bool ok9 = r9 == 0 || r9 == 3 || r9 == 6 || r9 == 4 || r9 == 5;
    hyps.push_back(
        {"nu_mod_9", "nu in {0, +-3, +-4} mod 9", "closed-form", ok9, json{{"residue", jbig(r9)}}, std::nullopt});
  } else if (nu0 && *nu0 > 0) {
    family = "HFTrace0";
    nu = *nu0;
    hyps.push_back({"family_shape", "k = 4 + 20 nu^2", "closed-form", true, json{{"nu", jbig(nu)}}, std::nullopt});
    BigInt l5 = mod(ell, BigInt(5));
    hyps.push_back(
        {"ell_mod_5", "ell = +-1 mod 5", "closed-form", pm1(ell, 5), json{{"residue", jbig(l5)}}, std::nullopt});
    BigInt r9 = mod(nu, BigInt(9));
    hyps.push_back({"nu_mod_9", "nu = +-4 mod 9", "closed-form", r9 == 4 || r9 == 5, json{{"residue", jbig(r9)}},
                    std::nullopt});
    hyps.push_back(factor_check(nu, 20));
  } else {
    hyps.push_back({"family_shape", "k = 4 + 2 nu^2 or k = 4 + 20 nu^2", "closed-form", false, json::object(),
                    std::nullopt});
    return not_applicable("E3FailureSInt", params, hyps, ms_since(t0));
  }
  params["family"] = family;
  params["nu"] = jbig(nu);

  bool hyp_ok = true;
  for (auto& h : hyps) hyp_ok = hyp_ok && h.result;
  if (!hyp_ok) {
    json failed = json::array();
    for (auto& h : hyps)
      if (!h.result) failed.push_back(h.name);
    params["failed_clauses"] = failed;
    return not_applicable("E3FailureSInt", params, hyps, ms_since(t0));
  }

  Certificate cert;
  cert.kind = "E3FailureSInt";
  cert.parameters = params;
  for (auto& h : hyps) cert.add(h);
  cert.add({"admissible_k", "k avoids the congruence obstructions (t != 1 mod 4, t != 1,4 mod 9)", "closed-form",
            admissible_k(k), json{{"t", jbig(BigInt(k - 2))}}, std::nullopt});
  auto pts = search_localized(k, ell, opt.max_exp, opt.bound);
  Check s{"search_localized_empty", "no point of either shape over Z[1/ell] within the bounds", "exhaustive",
          pts.empty(), json::object(),
          "max_exp=" + std::to_string(opt.max_exp) + ",bound=" + opt.bound.get_str()};
  s.data["points_found"] = pts.size();
  if (!pts.empty()) {
    s.data["first_point"] = jpoint(pts.front().numerators);
    s.data["first_exponent"] = pts.front().a;
  }
  cert.add(s);
  cert.finalize();
  cert.runtime_ms = ms_since(t0);
  return cert;
}

Certificate certify_e2_failure(const BigInt& t, const BigInt& ell, const SIntOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  Certificate sub = certify_sint_failure(BigInt(t + 2), ell, opt);
  Certificate cert;
  cert.kind = "E2Failure";
  cert.parameters = json{{"t", jbig(t)}, {"ell", jbig(ell)}, {"max_exp", opt.max_exp}, {"search_bound", jbig(opt.bound)}};
  cert.add({"admissible_t", "t avoids the mod 16 and mod 9 obstructions", "closed-form", admissible_t(t), json::object(),
            std::nullopt});
  Check s{"sint_failure", "k = t + 2 is a Hasse failure over Z[1/ell]", "exhaustive", sub.conclusion, sub.to_json(),
          std::nullopt};
  s.data.erase("runtime_ms");
  cert.add(s);
  cert.finalize();
  cert.runtime_ms = ms_since(t0);
  return cert;
}

// --- explicit local-global failure ----------------------------------------------

MatZ build_hfe1_matrix(const BigInt& nu, const BigInt& ell) {
  if (nu <= 0) throw std::invalid_argument("build_hfe1_matrix: nu must be positive");
  if (mod(nu, BigInt(27)) != 4) throw std::invalid_argument("build_hfe1_matrix: nu != 4 mod 27");
  std::vector<BigInt> bad;
  if (!prime_factors_pm1(nu, 20, &bad))
    throw std::invalid_argument("build_hfe1_matrix: prime factor " + bad.front().get_str() + " of nu is not +-1 mod 20");
  if (ell < 2 || !is_prime(ell)) throw std::invalid_argument("build_hfe1_matrix: ell must be prime");
  if (!pm1(ell, 5)) throw std::invalid_argument("build_hfe1_matrix: ell != +-1 mod 5");
  BigInt t = 2 + 20 * nu * nu;
  BigInt n1 = 2 * (5 * nu - 2);
  if (n1 % 3 != 0) throw std::logic_error("build_hfe1_matrix: 3 does not divide 2(5nu - 2)");
  MatZ A{BigInt(t - 5), BigInt(n1 / 3), BigInt(6 * (5 * nu + 2)), BigInt(5)};
  if (A.det() != 1) throw std::logic_error("build_hfe1_matrix: det A != 1");
  return A;
}

std::vector<long> default_hfe1_moduli() { return {2, 3, 4, 5, 7, 8, 9, 16, 27, 32}; }

Certificate verify_hfe1(const BigInt& nu, const BigInt& ell, const std::vector<long>& moduli, const SIntOptions& opt) {
  return verify_hfe1_matrix(build_hfe1_matrix(nu, ell), nu, ell, moduli, opt);
}

Certificate verify_hfe1_matrix(const MatZ& A, const BigInt& nu, const BigInt& ell, const std::vector<long>& moduli,
                               const SIntOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  BigInt t = 2 + 20 * nu * nu;
  Certificate cert;
  cert.kind = "HFE1";
  json mods = json::array();
  for (long q : moduli) mods.push_back(q);
  long max2 = 1, max3 = 1;
  for (long q : moduli) {
    long r = q;
    while (r % 2 == 0) r /= 2;
    if (r == 1) max2 = std::max(max2, q);
    r = q;
    while (r % 3 == 0) r /= 3;
    if (r == 1) max3 = std::max(max3, q);
  }
  cert.parameters = json{{"nu", jbig(nu)},        {"ell", jbig(ell)},          {"t", jbig(t)},
                         {"matrix", jmat(A)},      {"moduli", mods},            {"max_exp", opt.max_exp},
                         {"search_bound", jbig(opt.bound)},
                         {"truncation", "commutator-ness checked modulo the listed q only; 2-power moduli up to " +
                                            std::to_string(max2) + ", 3-power moduli up to " + std::to_string(max3)}};

  BigInt det = A.det();
  cert.add({"det", "det A = 1", "closed-form", det == 1, json{{"det", jbig(det)}}, std::nullopt});
  Mat2L m2 = reduce_mod(A, 2), m3 = reduce_mod(A, 3);
  cert.add({"mod2_identity", "A = I mod 2", "closed-form", m2 == Mat2L{1, 0, 0, 1}, json{{"A_mod_2", jmat(m2)}},
            std::nullopt});
  cert.add({"mod3_minus_identity", "A = -I mod 3", "closed-form", m3 == Mat2L{2, 0, 0, 2}, json{{"A_mod_3", jmat(m3)}},
            std::nullopt});
  cert.add({"trace", "Tr A = 2 + 20 nu^2", "closed-form", A.tr() == t, json{{"trace", jbig(A.tr())}}, std::nullopt});

  for (long q : moduli) {
    Mat2L Aq = reduce_mod(A, q);
    Check c{"commutator_mod_" + std::to_string(q), "A mod " + std::to_string(q) + " is a commutator in SL2(Z/q)",
            "oracle", false, json::object(), std::to_string(q)};
    c.data["A_mod_q"] = jmat(Aq);
    if (mod(det, BigInt(q)) != 1 % q) {
      c.data["reason"] = "det A != 1 mod q";
    } else {
      auto w = commutator_test_modq(Aq, q);
      c.result = w.found;
      if (w.found) {
        c.data["X"] = jmat(w.X);
        c.data["Y"] = jmat(w.Y);
      }
    }
    cert.add(c);
  }

  cert.add({"admissible_t", "t avoids the mod 16 and mod 9 obstructions", "closed-form", admissible_t(t),
            json::object(), std::nullopt});
  Certificate sub = certify_sint_failure(BigInt(t + 2), ell, opt);
  json sj = sub.to_json();
  sj.erase("runtime_ms");
  cert.add({"sint_failure", "t + 2 is a Hasse failure over Z[1/ell], so A is not a commutator there", "exhaustive",
            sub.conclusion, sj, std::nullopt});
  cert.finalize();
  cert.runtime_ms = ms_since(t0);
  return cert;
}

// --- congruence obstructions ----------------------------------------------------

std::vector<Obstruction> catalogue_congruence_obstructions(const MatZ& Z) {
  if (Z.det() != 1) throw std::invalid_argument("catalogue_congruence_obstructions: det Z != 1");
  BigInt t = Z.tr();
  std::vector<Obstruction> out;
  auto confirm = [&](long q, const std::string& why) {
    bool found = commutator_test_modq(reduce_mod(Z, q), q).found;
    out.push_back({q, why, !found});
  };
  if (mod(t, BigInt(4)) == 0) confirm(4, "4 | Tr Z");
  if (obstructed_mod9(t)) confirm(9, "Tr Z = +-1, +-4 mod 9");
  if (obstructed_mod16(t)) confirm(16, "Tr Z in the mod 16 exclusion list");
  for (long q : {2L, 3L, 4L}) {
    BigInt Q(q);
    if (mod(t, Q) != 2 % q) continue;
    // Z = I + N with N nilpotent mod q and some off-diagonal entry a unit.
    bool unit_off = gcd(Z.b, Q) == 1 || gcd(Z.c, Q) == 1;
    if (unit_off) confirm(q, "Tr Z = 2 mod " + std::to_string(q) + " with an off-diagonal unit (unipotent shape)");
  }
  return out;
}

// --- replay -----------------------------------------------------------------------

ReplayResult replay_certificate(const json& j) {
  Certificate orig = Certificate::from_json(j);
  const json& p = orig.parameters;
  std::string kind = orig.kind == "NotApplicable" ? p.at("requested_kind").get<std::string>() : orig.kind;
  SIntOptions so;
  if (p.contains("max_exp")) so.max_exp = p["max_exp"].get<unsigned>();
  if (p.contains("search_bound") && kind != "E3FailureZ") so.bound = from_jbig(p["search_bound"]);

  ReplayResult rr;
  if (kind == "E3FailureZ") {
    HfzOptions ho;
    ho.search_bound = from_jbig(p.at("search_bound"));
    rr.replayed = certify_hfz(from_jbig(p.at("k")), ho);
  } else if (kind == "E3FailureSInt") {
    rr.replayed = certify_sint_failure(from_jbig(p.at("k")), from_jbig(p.at("ell")), so);
  } else if (kind == "E2Failure") {
    rr.replayed = certify_e2_failure(from_jbig(p.at("t")), from_jbig(p.at("ell")), so);
  } else if (kind == "HFE1") {
    std::vector<long> mods;
    for (auto& q : p.at("moduli")) mods.push_back(q.get<long>());
    rr.replayed =
        verify_hfe1_matrix(from_jmat(p.at("matrix")), from_jbig(p.at("nu")), from_jbig(p.at("ell")), mods, so);
  } else {
    throw std::invalid_argument("certificate: unknown kind " + kind);
  }

  const Certificate& r = rr.replayed;
  if (r.kind != orig.kind) rr.mismatches.push_back("kind");
  if (r.parameters != orig.parameters) rr.mismatches.push_back("parameters");
  if (r.conclusion != orig.conclusion) rr.mismatches.push_back("conclusion");
  if (r.checks.size() != orig.checks.size()) rr.mismatches.push_back("check count");
  for (size_t i = 0; i < std::min(r.checks.size(), orig.checks.size()); ++i) {
    const Check &a = r.checks[i], &b = orig.checks[i];
    if (a.name != b.name || a.result != b.result || a.data != b.data || a.bound != b.bound || a.method != b.method)
      rr.mismatches.push_back("check " + b.name);
  }
  rr.identical = rr.mismatches.empty();
  return rr;
}

}  // namespace csl
