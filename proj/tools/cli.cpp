#include "cli.hpp"

#include "csl/lifting.hpp"
#include "csl/quadforms.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace csl::cli {

namespace {

json jbig(const BigInt& v) {
  if (fits_i64(v)) return json(to_i64(v));
  return json(v.get_str());
}
json jpoint(const Point& P) { return json::array({jbig(P.x[0]), jbig(P.x[1]), jbig(P.x[2])}); }
template <class R>
json jmat(const Mat2<R>& A) {
  auto s = [](const R& x) { return RingOps<R>::str(x); };
  return json::array({json::array({s(A.a), s(A.b)}), json::array({s(A.c), s(A.d)})});
}
json jmatz(const MatZ& A) {
  return json::array({json::array({jbig(A.a), jbig(A.b)}), json::array({jbig(A.c), jbig(A.d)})});
}
json jmatl(const Mat2L& A) { return json::array({json::array({A.a, A.b}), json::array({A.c, A.d})}); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<BigInt> parse_list(const std::string& s) {
  std::vector<BigInt> out;
  for (auto& p : split(s, ',')) out.push_back(parse_bigint(p));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

MatZ parse_matz(const std::string& s) {
  auto v = parse_list(s);
  if (v.size() != 4) throw std::invalid_argument("matrix must be a,b,c,d: '" + s + "'");
  return MatZ{v[0], v[1], v[2], v[3]};
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  for (auto& v : parse_list(s)) {
    if (!fits_i64(v)) throw std::invalid_argument("value out of range: " + v.get_str());
    out.push_back(to_i64(v));
  }
  return out;
}

json with_schema(json j) {
  json out;
  out["schema_version"] = "1";
  for (auto& [k, v] : j.items()) out[k] = v;
  return out;
}

json profile_json(const HasseProfile& h) {
  json pr = json::object();
  for (auto& [pl, v] : h.entries) pr[pl.name()] = v;
  return pr;
}

json isotropy_json(const IsotropyResult& r) {
  json j;
  j["verdict"] = r.verdict == IsotropyResult::Isotropic     ? "Isotropic"
                 : r.verdict == IsotropyResult::Anisotropic ? "Anisotropic"
                                                            : "Inapplicable";
  if (r.verdict == IsotropyResult::Inapplicable) return j;
  j["coordinate"] = r.coordinate + 1;
  j["m"] = jbig(r.m);
  j["n"] = jbig(r.n);
  if (r.obstruction_prime) j["obstruction_prime"] = jbig(*r.obstruction_prime);
  if (r.verdict == IsotropyResult::Isotropic) {
    if (r.witness)
      j["witness"] = json::array({jbig((*r.witness)[0]), jbig((*r.witness)[1]), jbig((*r.witness)[2])});
    else
      j["witness"] = nullptr;  // criterion only
    j["witness_bound"] = r.witness_bound;
  }
  return j;
}

json class_json(const ClassData& cd) {
  json classes = json::array();
  for (auto& e : cd.classes) {
    json orb = json::array();
    for (auto& p : e.orbit_sample) orb.push_back(jpoint(p));
    classes.push_back(json{{"rep", jpoint(e.rep)}, {"orbit_sample", orb}, {"bound", jbig(cd.bound)}});
  }
  return with_schema(json{{"k", jbig(cd.k)}, {"classes", classes}, {"hhat", cd.classes.size()}});
}

json lift_json(const LiftResult<BigInt>& r) {
  json moves = json::array();
  for (auto& m : r.moves) moves.push_back(m.str());
  return json{{"lifted", true},
              {"X", jmatz(r.X)},
              {"Y", jmatz(r.Y)},
              {"orientation", r.orientation == LiftResult<BigInt>::Zdirect ? "Z" : "Z^-1"},
              {"moves", moves},
              {"commutator", jmatz(commutator(r.X, r.Y))}};
}

// A unit eps of Z[1/L] with eps - 1/eps a unit, smallest height first.
std::optional<LocalizedInt> find_eta_unit(const SRingPtr& ring) {
  std::vector<Rational> cands;
  std::vector<BigInt> ps = ring->primes;
  // Products of prime powers with exponents in [-3, 3].
  std::vector<Rational> cur = {Rational(1)};
  for (auto& p : ps) {
    std::vector<Rational> next;
    for (auto& c : cur)
      for (int e = -3; e <= 3; ++e) {
        Rational f = e >= 0 ? Rational(pow(p, e)) : Rational(BigInt(1), pow(p, -e));
        next.push_back(Rational(c * f));
      }
    cur = next;
  }
  for (auto& c : cur) {
    cands.push_back(c);
    cands.push_back(Rational(-c));
  }
  auto height = [](const Rational& q) {
    return std::max(BigInt(abs(q.get_num())), BigInt(q.get_den()));
  };
  std::sort(cands.begin(), cands.end(), [&](const Rational& a, const Rational& b) {
    BigInt ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  for (auto& c : cands) {
    LocalizedInt eps = LocalizedInt::from_rational(ring, c);
    LocalizedInt eta = eps - eps.inverse();
    if (eta.is_unit()) return eps;
  }
  return std::nullopt;
}

SRingPtr parse_ring(const std::string& s) {
  std::string r = s;
  std::transform(r.begin(), r.end(), r.begin(), ::tolower);
  if (r == "z") return SRing::make({});
  if (r.rfind("z1/", 0) == 0) {
    BigInt n = parse_bigint(r.substr(3));
    if (n < 2) throw std::invalid_argument("ring Z[1/L] needs L >= 2");
    return SRing::from_denominator(n);
  }
  throw std::invalid_argument("unknown ring '" + s + "' (use z or z1/L)");
}

struct Global {
  std::string format = "json";
  uint64_t seed = 1;
  int workers = 0;
  bool timing = false;
};

}  // namespace

std::string render_text(const json& j) {
  std::ostringstream os;
  std::function<void(const json&, int)> rec = [&](const json& v, int ind) {
    std::string pad(ind, ' ');
    if (v.is_object()) {
      for (auto& [k, x] : v.items()) {
        bool nested = (x.is_object() && !x.empty()) ||
                      (x.is_array() && std::any_of(x.begin(), x.end(), [](const json& e) {
                         return e.is_object() || (e.is_array() && !e.empty() && e[0].is_array());
                       }));
        if (nested) {
          os << pad << k << ":\n";
          rec(x, ind + 2);
        } else {
          os << pad << k << ": " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
        }
      }
    } else if (v.is_array()) {
      for (auto& x : v) {
        if (x.is_object()) {
          os << pad << "-\n";
          rec(x, ind + 2);
        } else {
          os << pad << "- " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
        }
      }
    } else {
      os << pad << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  };
  rec(j, 0);
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  return run((int)argv.size(), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Commutators in SL2, Markoff surfaces and Hasse-failure certificates", "csl"};
  app.require_subcommand(1);
  Global g;
  if (const char* w = std::getenv("CSL_WORKERS")) g.workers = std::atoi(w);
  app.add_option("--format", g.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", g.seed, "seed for randomized sampling");
  app.add_option("--workers", g.workers, "OpenMP threads (default: CSL_WORKERS or all cores)");
  app.add_flag("--timing", g.timing, "record wall-clock runtimes (breaks byte-identical output)");

  std::function<json()> action;
  int repro_status = kOk;

  // --- markoff ----------------------------------------------------------------
  auto* mk = app.add_subcommand("markoff", "Markoff surfaces")->require_subcommand(1);
  std::string k_s, t_s, point_s, bound_s, ell_s;
  unsigned max_exp = 3;
  long max_steps = 1000000;
  size_t count = 20;
  {
    auto* c = mk->add_subcommand("reduce", "normal form and descent path");
    c->add_option("--k", k_s, "level (checked against the point)");
    c->add_option("--point", point_s)->required();
    c->add_option("--max-steps", max_steps);
    c->callback([&] {
      action = [&] {
        Point P = parse_point(point_s);
        if (!k_s.empty() && P.level() != parse_bigint(k_s)) throw std::invalid_argument("point is not on level k");
        auto r = reduce(P, max_steps);
        json path = json::array();
        for (auto& m : r.path) path.push_back(m.str());
        return with_schema(
            json{{"k", jbig(P.level())}, {"point", jpoint(P)}, {"normal_form", jpoint(r.normal_form)}, {"path", path}});
      };
    });
  }
  {
    auto* c = mk->add_subcommand("class", "fundamental points and class number");
    c->add_option("--k", k_s, "level, or a comma-separated list")->required();
    c->add_option("--bound", bound_s, "enumeration bound (default ceil(3 sqrt|k|) + 3)");
    c->callback([&] {
      action = [&] {
        auto ks = parse_list(k_s);
        std::optional<BigInt> b;
        if (!bound_s.empty()) b = parse_bigint(bound_s);
        if (ks.size() == 1) return class_json(class_data(ks[0], b));
        json all = json::array();
        for (auto& k : ks) all.push_back(class_json(class_data(k, b)));
        return with_schema(json{{"results", all}});
      };
    });
  }
  {
    auto* c = mk->add_subcommand("search", "integral or Z[1/L] points in a box");
    c->add_option("--k", k_s)->required();
    c->add_option("--bound", bound_s)->required();
    c->add_option("--ell", ell_s);
    c->add_option("--max-exp", max_exp);
    c->callback([&] {
      action = [&] {
        BigInt k = parse_bigint(k_s), b = parse_bigint(bound_s);
        json pts = json::array();
        if (ell_s.empty()) {
          for (auto& p : search_integral(k, b)) pts.push_back(jpoint(p));
          return with_schema(json{{"k", jbig(k)}, {"bound", jbig(b)}, {"points", pts}, {"count", pts.size()}});
        }
        BigInt ell = parse_bigint(ell_s);
        for (auto& p : search_localized(k, ell, max_exp, b))
          pts.push_back(json{{"exponent", p.a}, {"numerators", jpoint(p.numerators)}});
        return with_schema(json{{"k", jbig(k)},
                                {"ell", jbig(ell)},
                                {"max_exp", max_exp},
                                {"bound", jbig(b)},
                                {"points", pts},
                                {"count", pts.size()}});
      };
    });
  }
  {
    auto* c = mk->add_subcommand("admissible", "congruence admissibility of k or t = k - 2");
    auto* ok = c->add_option("--k", k_s);
    auto* ot = c->add_option("--t", t_s);
    ok->excludes(ot);
    c->callback([&] {
      action = [&] {
        if (k_s.empty() == t_s.empty()) throw std::invalid_argument("give exactly one of --k, --t");
        BigInt t = t_s.empty() ? BigInt(parse_bigint(k_s) - 2) : parse_bigint(t_s);
        json j{{"t", jbig(t)}, {"k", jbig(BigInt(t + 2))}, {"admissible_k", admissible_k(BigInt(t + 2))},
               {"admissible_t", admissible_t(t)}, {"obstructed_mod16", obstructed_mod16(t)},
               {"obstructed_mod9", obstructed_mod9(t)}};
        if (mod(t, BigInt(16)) == 10)
          j["note"] = "t = 10 mod 16 is excluded here; whether t = 106 is a commutator trace is open";
        return with_schema(j);
      };
    });
  }
  {
    auto* c = mk->add_subcommand("orbit", "seeded random walk in an orbit");
    c->add_option("--point", point_s)->required();
    c->add_option("--count", count);
    c->callback([&] {
      action = [&] {
        Point P = parse_point(point_s);
        json pts = json::array();
        for (auto& p : orbit_sample(P, count, g.seed)) pts.push_back(jpoint(p));
        return with_schema(json{{"k", jbig(P.level())}, {"seed", g.seed}, {"points", pts}});
      };
    });
  }
  {
    auto* c = mk->add_subcommand("e2good", "good-prime test for every class of level k");
    c->add_option("--k", k_s)->required();
    c->callback([&] {
      action = [&] {
        auto r = e2_good_test(parse_bigint(k_s));
        json cls = json::array();
        for (auto& e : r.classes) {
          json j{{"rep", jpoint(e.rep)}, {"found", e.found}};
          if (e.found) {
            j["p"] = jbig(e.p);
            j["x"] = jbig(e.x);
          }
          cls.push_back(j);
        }
        return with_schema(json{{"k", k_s}, {"verdict", r.verdict == E2GoodResult::AllBad ? "AllBad" : "Inconclusive"},
                                {"classes", cls}});
      };
    });
  }

  // --- quadform ---------------------------------------------------------------
  auto* qf = app.add_subcommand("quadform", "ternary forms attached to points")->require_subcommand(1);
  long witness_bound = 600;
  {
    auto* c = qf->add_subcommand("profile", "Hasse invariants of a point");
    c->add_option("--k", k_s);
    c->add_option("--point", point_s)->required();
    c->callback([&] {
      action = [&] {
        Point P = parse_point(point_s);
        if (!k_s.empty() && P.level() != parse_bigint(k_s)) throw std::invalid_argument("point is not on level k");
        auto h = hasse_profile(P);
        json minus = json::array();
        for (auto& s : h.minus_places()) minus.push_back(s);
        return with_schema(json{{"k", jbig(P.level())},
                                {"point", jpoint(P)},
                                {"profile", profile_json(h)},
                                {"product", h.product},
                                {"minus_places", minus}});
      };
    });
  }
  {
    auto* c = qf->add_subcommand("isotropy", "isotropy of the form of each class of level k");
    c->add_option("--k", k_s)->required();
    c->add_option("--bound", bound_s);
    c->add_option("--witness-bound", witness_bound);
    c->callback([&] {
      action = [&] {
        std::optional<BigInt> b;
        if (!bound_s.empty()) b = parse_bigint(bound_s);
        auto cd = class_data(parse_bigint(k_s), b);
        json cls = json::array();
        for (auto& e : cd.classes) {
          auto h = hasse_profile(e.rep);
          cls.push_back(json{{"rep", jpoint(e.rep)},
                             {"profile", profile_json(h)},
                             {"product", h.product},
                             {"isotropy", isotropy_json(form_isotropic(e.rep, witness_bound))}});
        }
        return with_schema(json{{"k", jbig(cd.k)}, {"bound", jbig(cd.bound)}, {"classes", cls}});
      };
    });
  }

  // --- lift -------------------------------------------------------------------
  auto* lf = app.add_subcommand("lift", "commutator witnesses from Markoff points")->require_subcommand(1);
  std::string z_s, y_s, ring_s = "z1/6", r_s;
  long box = 50;
  {
    auto* c = lf->add_subcommand("point", "X, Y with [X,Y] = Z or Z^-1 from a point of level Tr Z + 2");
    c->add_option("--z", z_s)->required();
    c->add_option("--point", point_s)->required();
    c->add_option("--y", y_s, "element of the trace set; searched in a box when omitted");
    c->add_option("--box", box, "entry box for the trace-set search");
    c->callback([&] {
      action = [&] {
        MatZ Z = parse_matz(z_s);
        if (Z.det() != 1) throw std::invalid_argument("det Z != 1");
        Point P = parse_point(point_s);
        json res{{"Z", jmatz(Z)}, {"point", jpoint(P)}};
        std::optional<MatZ> Y;
        if (!y_s.empty()) {
          Y = parse_matz(y_s);
        } else {
          for (int j = 0; j < 3 && !Y; ++j) Y = find_trace_set_element(Z, P.x[j], box);
          res["trace_set_box"] = box;
        }
        if (!Y) {
          res["lifted"] = false;
          res["reason"] = "no trace-set element with trace among the coordinates within the box";
          return with_schema(res);
        }
        res["Y_input"] = jmatz(*Y);
        try {
          json lifted = lift_json(lift_point(Z, P, *Y));
          for (auto& [k, v] : lifted.items()) res[k] = v;
        } catch (const LiftError& e) {
          res["lifted"] = false;
          res["reason"] = e.what();
          json bad = json::array();
          for (auto& s : e.failed_entries) bad.push_back(s);
          res["failed_entries"] = bad;
        }
        return with_schema(res);
      };
    });
  }
  {
    auto* c = lf->add_subcommand("universal", "commutator of trace t and point of level t + 2 over Z[1/L]");
    c->add_option("--t", t_s)->required();
    c->add_option("--ring", ring_s, "z or z1/L");
    c->callback([&] {
      action = [&] {
        auto ring = parse_ring(ring_s);
        BigInt t = parse_bigint(t_s);
        json res{{"t", jbig(t)}, {"ring", ring->primes.empty() ? std::string("Z") : ring->name()}};
        auto eps = find_eta_unit(ring);
        if (!eps) {
          res["applicable"] = false;
          res["reason"] = "no unit eps with eps - 1/eps a unit";
          return with_schema(res);
        }
        res["applicable"] = true;
        LocalizedInt T(ring, t);
        auto p = universal_pair(T, *eps);
        res["eps"] = eps->str();
        res["X"] = jmat(p.X);
        res["Y"] = jmat(p.Y);
        res["trace_commutator"] = commutator(p.X, p.Y).tr().str();
        LocalizedInt two(ring, 2);
        if (two.is_unit()) {
          LocalizedInt zeta = *eps;
          LocalizedInt z = zeta + zeta.inverse(), w = zeta - zeta.inverse();
          auto P = universal_point(LocalizedInt(ring, BigInt(t + 2)), z, w);
          res["point"] = json::array({P.x[0].str(), P.x[1].str(), P.x[2].str()});
        }
        return with_schema(res);
      };
    });
  }
  {
    auto* c = lf->add_subcommand("minus-identity", "X, Y with [X,Y] = -I from r1^2 + r2^2 + r3^2 = 0");
    c->add_option("--ring", ring_s, "Zmod:q, Z, Q or Z1/L")->required();
    c->add_option("--r", r_s, "r1,r2,r3")->required();
    c->callback([&] {
      action = [&] {
        auto r = parse_list(r_s);
        if (r.size() != 3) throw std::invalid_argument("--r needs three values");
        auto m = minus_identity_commutator(ring_s, r[0], r[1], r[2]);
        json res{{"ring", ring_s}, {"r", json::array({jbig(r[0]), jbig(r[1]), jbig(r[2])})}, {"solvable", m.solvable}};
        if (m.solvable) {
          res["X"] = jmat(m.X);
          res["Y"] = jmat(m.Y);
          res["u"] = jbig(m.u);
          res["v"] = jbig(m.v);
        } else {
          res["reason"] = m.reason;
        }
        return with_schema(res);
      };
    });
  }

  // --- words ------------------------------------------------------------------
  auto* wd = app.add_subcommand("words", "free products G_{m,n}")->require_subcommand(1);
  std::string m_s = "2", n_s = "3", word_s;
  long tw = 3;
  {
    auto* c = wd->add_subcommand("alg1", "conjugacy representatives of trace t");
    c->add_option("--m", m_s)->required();
    c->add_option("--n", n_s)->required();
    c->add_option("--t", tw)->required();
    c->callback([&] {
      action = [&] {
        FreeProduct G = parse_free_product(m_s, n_s);
        auto r = alg1_representatives(G, tw);
        json reps = json::array(), der = json::array();
        for (auto& w : r.reps) reps.push_back(display_word(G, w));
        for (auto& w : r.derived) der.push_back(display_word(G, w));
        return with_schema(json{{"group", G.str()},
                                {"t", tw},
                                {"reps", reps},
                                {"derived", der},
                                {"psl2_classes", r.psl2_classes},
                                {"rotations_checked", r.rotations_checked}});
      };
    });
  }
  {
    auto* c = wd->add_subcommand("metab", "image of a word of G' in S_{m,n}");
    c->add_option("--m", m_s)->required();
    c->add_option("--n", n_s)->required();
    c->add_option("--word", word_s)->required();
    c->callback([&] {
      action = [&] {
        FreeProduct G = parse_free_product(m_s, n_s);
        Word w = reduce_word(parse_word(word_s), G);
        json res{{"group", G.str()}, {"word", format_word(w)}, {"in_derived", in_derived_subgroup(G, w)}};
        if (in_derived_subgroup(G, w) && G.m != 0) {
          auto s = metabelian_image(G, w);
          res["image"] = s.str();
          res["is_unit"] = is_unit_in_S(G, s);
        }
        if (auto nm = commutator_name(G, w)) res["commutator"] = *nm;
        res["trace"] = jbig(word_trace(G, w));
        return with_schema(res);
      };
    });
  }
  {
    auto* c = wd->add_subcommand("table1", "trace congruences for the second derived subgroup");
    c->callback([&] {
      action = [&] {
        json rows = json::array();
        for (FreeProduct G : {FreeProduct{2, 3}, FreeProduct{2, 0}, FreeProduct{3, 3}, FreeProduct{3, 0}}) {
          auto r = table1_trace_filter(G);
          json lam = json::array(), vals = json::array();
          for (long x : r.lambda) lam.push_back(x);
          for (long x : r.values) vals.push_back(x);
          rows.push_back(json{{"group", G.str()},
                              {"C", jmatz(r.C)},
                              {"trace_C", jbig(r.C.tr())},
                              {"l", r.l},
                              {"lambda", lam},
                              {"values", vals},
                              {"method", r.method}});
        }
        return with_schema(json{{"rows", rows}});
      };
    });
  }

  // --- quotient ---------------------------------------------------------------
  auto* qt = app.add_subcommand("quotient", "commutators in SL2(Z/q)")->require_subcommand(1);
  std::string q_s;
  long max_q = 64;
  {
    auto* c = qt->add_subcommand("image", "traces of commutators mod q");
    c->add_option("--q", q_s, "modulus, or a comma-separated list")->required();
    c->add_option("--max-q", max_q);
    c->callback([&] {
      action = [&] {
        json all = json::array();
        for (long q : parse_longs(q_s)) {
          auto img = trace_commutator_image(q, max_q);
          json im = json::array(), miss = json::array();
          for (long r = 0; r < q; ++r) (img.count(r) ? im : miss).push_back(r);
          all.push_back(json{{"q", q}, {"image", im}, {"missing", miss}});
        }
        if (all.size() == 1) return with_schema(all[0]);
        return with_schema(json{{"results", all}});
      };
    });
  }
  {
    auto* c = qt->add_subcommand("test", "is Z a commutator mod q");
    c->add_option("--q", q_s)->required();
    c->add_option("--z", z_s)->required();
    c->add_option("--max-q", max_q);
    c->callback([&] {
      action = [&] {
        long q = parse_longs(q_s).at(0);
        MatZ Z = parse_matz(z_s);
        auto w = commutator_test_modq(reduce_mod(Z, q), q, max_q);
        json res{{"q", q}, {"Z_mod_q", jmatl(reduce_mod(Z, q))}, {"commutator", w.found}};
        if (w.found) {
          res["X"] = jmatl(w.X);
          res["Y"] = jmatl(w.Y);
        }
        return with_schema(res);
      };
    });
  }
  {
    auto* c = qt->add_subcommand("obstructions", "closed-form congruence obstructions, confirmed by the oracle");
    c->add_option("--z", z_s)->required();
    c->callback([&] {
      action = [&] {
        MatZ Z = parse_matz(z_s);
        json obs = json::array();
        for (auto& o : catalogue_congruence_obstructions(Z))
          obs.push_back(json{{"q", o.q}, {"reason", o.reason}, {"confirmed", o.confirmed}});
        return with_schema(json{{"Z", jmatz(Z)}, {"trace", jbig(Z.tr())}, {"obstructions", obs}});
      };
    });
  }

  // --- certify ----------------------------------------------------------------
  auto* cf = app.add_subcommand("certify", "machine-checkable certificates")->require_subcommand(1);
  std::string nu_s, moduli_s, file_s;
  std::string sbound_s;
  auto finish = [&](Certificate c) {
    if (!g.timing) c.runtime_ms = 0;
    return c.to_json();
  };
  {
    auto* c = cf->add_subcommand("hfz", "Hasse failure over Z");
    c->add_option("--k", k_s)->required();
    c->add_option("--bound", sbound_s, "search bound (default 10000)");
    c->callback([&] {
      action = [&] {
        HfzOptions o;
        if (!sbound_s.empty()) o.search_bound = parse_bigint(sbound_s);
        return finish(certify_hfz(parse_bigint(k_s), o));
      };
    });
  }
  auto sint_opts = [&] {
    SIntOptions o;
    o.max_exp = max_exp;
    if (!sbound_s.empty()) o.bound = parse_bigint(sbound_s);
    return o;
  };
  {
    auto* c = cf->add_subcommand("sint", "Hasse failure over Z[1/ell]");
    c->add_option("--k", k_s)->required();
    c->add_option("--ell", ell_s)->required();
    c->add_option("--max-exp", max_exp);
    c->add_option("--bound", sbound_s, "search bound (default 1000)");
    c->callback([&] {
      action = [&] { return finish(certify_sint_failure(parse_bigint(k_s), parse_bigint(ell_s), sint_opts())); };
    });
  }
  {
    auto* c = cf->add_subcommand("e2", "local-global failure for commutator traces");
    c->add_option("--t", t_s)->required();
    c->add_option("--ell", ell_s)->required();
    c->add_option("--max-exp", max_exp);
    c->add_option("--bound", sbound_s);
    c->callback([&] {
      action = [&] { return finish(certify_e2_failure(parse_bigint(t_s), parse_bigint(ell_s), sint_opts())); };
    });
  }
  {
    auto* c = cf->add_subcommand("hfe1", "explicit matrix, commutator mod q but not over Z[1/ell]");
    c->add_option("--nu", nu_s)->required();
    c->add_option("--ell", ell_s)->required();
    c->add_option("--moduli", moduli_s, "comma-separated list (default 2,3,4,5,7,8,9,16,27,32)");
    c->add_option("--max-exp", max_exp);
    c->add_option("--bound", sbound_s);
    c->callback([&] {
      action = [&] {
        auto mods = moduli_s.empty() ? default_hfe1_moduli() : parse_longs(moduli_s);
        for (long q : mods)
          if (q > 64) throw std::length_error("modulus " + std::to_string(q) + " exceeds the oracle budget 64");
        return finish(verify_hfe1(parse_bigint(nu_s), parse_bigint(ell_s), mods, sint_opts()));
      };
    });
  }
  {
    auto* c = cf->add_subcommand("check", "replay a serialized certificate");
    c->add_option("--file", file_s)->required();
    c->callback([&] {
      action = [&] {
        std::ifstream in(file_s);
        if (!in) throw std::invalid_argument("cannot open " + file_s);
        json j = json::parse(in);
        auto rr = replay_certificate(j);
        json mm = json::array();
        for (auto& s : rr.mismatches) mm.push_back(s);
        return with_schema(json{{"file", file_s},
                                {"kind", j.at("kind")},
                                {"identical", rr.identical},
                                {"conclusion", rr.replayed.conclusion},
                                {"mismatches", mm}});
      };
    });
  }

  // --- repro ------------------------------------------------------------------
  std::string table;
  bool update = false;
  {
    auto* c = app.add_subcommand("repro", "regenerate a table and diff against tools/expected");
    c->add_option("table", table, "t1, rt, genus329, classnumbers, hfu2-images or all")->required();
    c->add_flag("--update", update, "rewrite the expected file instead of diffing");
    c->callback([&] {
      action = [&] {
        std::vector<std::string> ids = table == "all" ? repro_ids() : std::vector<std::string>{table};
        json rows = json::array();
        for (auto& id : ids) {
          auto known = repro_ids();
          if (std::find(known.begin(), known.end(), id) == known.end())
            throw std::invalid_argument("unknown table '" + id + "'");
          std::string got = repro_report(id), path = expected_dir() + "/" + id + ".txt";
          json row{{"table", id}, {"expected", path}};
          if (update) {
            std::ofstream(path) << got;
            row["status"] = "updated";
          } else {
            std::ifstream in(path);
            std::stringstream ss;
            if (in.is_open()) ss << in.rdbuf();
            bool same = in.is_open() && ss.str() == got;
            row["status"] = same ? "match" : "diff";
            if (!same) {
              repro_status = kInternal;
              row["report"] = got;
            }
          }
          rows.push_back(row);
        }
        return with_schema(json{{"tables", rows}});
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  if (g.workers > 0) omp_set_num_threads(g.workers);
  if (!action) {
    err << "error: no command\n";
    return kInvalid;
  }
  try {
    json result = action();
    if (g.format == "text")
      out << render_text(result);
    else
      out << result.dump(2) << "\n";
    return repro_status;
  } catch (const std::length_error& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::runtime_error& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace csl::cli
