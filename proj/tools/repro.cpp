#include "cli.hpp"

#include "csl/quadforms.hpp"

#include <sstream>

#ifndef CSL_EXPECTED_DIR
#define CSL_EXPECTED_DIR "tools/expected"
#endif

namespace csl::cli {

namespace {

template <class C>
std::string braces(const C& xs) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& x : xs) {
    os << (first ? "" : ", ") << x;
    first = false;
  }
  os << "}";
  return os.str();
}

std::string t1() {
  std::ostringstream os;
  os << "group  C  Tr C  l  lambda  Tr(cs(d)) values  method\n";
  for (FreeProduct G : {FreeProduct{2, 3}, FreeProduct{2, 0}, FreeProduct{3, 3}, FreeProduct{3, 0}}) {
    auto r = table1_trace_filter(G);
    os << G.str() << "  " << r.C.str() << "  " << r.C.tr().get_str() << "  " << r.l << "  " << braces(r.lambda) << "  " << braces(r.values)
       << "  " << r.method << "\n";
  }
  return os.str();
}

std::string rt() {
  std::ostringstream os;
  const std::pair<FreeProduct, long> cases[] = {
      {{2, 3}, 3}, {{2, 0}, 6}, {{3, 3}, 6}, {{3, 0}, 14}, {{3, 0}, 18}};
  for (auto& [G, t] : cases) {
    auto r = alg1_representatives(G, t);
    std::vector<std::string> reps, der;
    for (auto& w : r.reps) reps.push_back(display_word(G, w));
    for (auto& w : r.derived) der.push_back(display_word(G, w));
    os << G.str() << " t=" << t << "  R_t = " << braces(reps) << "  in G': " << braces(der) << "\n";
  }
  return os.str();
}

std::string point_str(const Point& P) { return to_string(P); }

std::string genus329() {
  std::ostringstream os;
  auto cd = class_data(329);
  os << "k=329 hhat=" << cd.classes.size() << " bound=" << cd.bound.get_str() << "\n";
  for (auto& e : cd.classes) {
    auto h = hasse_profile(e.rep);
    auto iso = form_isotropic(e.rep);
    os << point_str(e.rep) << "  minus places " << braces(h.minus_places()) << "  product " << h.product << "  ";
    if (iso.verdict == IsotropyResult::Anisotropic) {
      os << "anisotropic at " << iso.obstruction_prime->get_str();
    } else if (iso.verdict == IsotropyResult::Isotropic) {
      os << "isotropic";
      if (iso.witness)
        os << " zero (" << (*iso.witness)[0].get_str() << "," << (*iso.witness)[1].get_str() << ","
           << (*iso.witness)[2].get_str() << ")";
    } else {
      os << "inapplicable";
    }
    os << "\n";
  }
  return os.str();
}

std::string classnumbers() {
  std::ostringstream os;
  for (long k : {70, 108, 329, 460, 3780}) {
    auto cd = class_data(k);
    std::vector<std::string> reps;
    for (auto& e : cd.classes) reps.push_back(point_str(e.rep));
    os << "k=" << k << "  hhat=" << cd.classes.size() << "  reps " << braces(reps) << "\n";
  }
  return os.str();
}

std::string hfu2_images() {
  std::ostringstream os;
  for (long q : {9L, 16L}) {
    auto img = trace_commutator_image(q);
    std::vector<long> miss;
    for (long r = 0; r < q; ++r)
      if (!img.count(r)) miss.push_back(r);
    os << "q=" << q << "  image " << braces(img) << "  missing " << braces(miss) << "\n";
  }
  return os.str();
}

}  // namespace

std::vector<std::string> repro_ids() { return {"t1", "rt", "genus329", "classnumbers", "hfu2-images"}; }

std::string expected_dir() { return CSL_EXPECTED_DIR; }

std::string repro_report(const std::string& id) {
  if (id == "t1") return t1();
  if (id == "rt") return rt();
  if (id == "genus329") return genus329();
  if (id == "classnumbers") return classnumbers();
  if (id == "hfu2-images") return hfu2_images();
  throw std::invalid_argument("unknown table '" + id + "'");
}

}  // namespace csl::cli
