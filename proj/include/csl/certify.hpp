#pragma once
// Machine-checkable certificates: Hasse failures for Markoff levels over Z and
// Z[1/l], local-global failures for commutators, and congruence obstructions.

#include "csl/freeprod.hpp"
#include "csl/markoff.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csl {

using json = nlohmann::ordered_json;

struct Check {
  std::string name, statement;
  std::string method;  // "closed-form" | "exhaustive" | "oracle"
  bool result = false;
  json data = json::object();
  std::optional<std::string> bound;
};

struct Certificate {
  std::string kind;  // E3FailureZ, E3FailureSInt, E2Failure, HFE1, NotApplicable
  json parameters = json::object();
  std::vector<Check> checks;
  bool conclusion = false;
  double runtime_ms = 0;

  void add(Check c) { checks.push_back(std::move(c)); }
  // conclusion = conjunction of all checks (false when there are none).
  void finalize();
  const Check* find(const std::string& name) const;
  json to_json() const;
  static Certificate from_json(const json& j);
};

struct HfzOptions {
  BigInt search_bound = 10000;
};
// Families k = 4 + 2 nu^2, 4 + 12 nu^2, 4 + 20 nu^2 with their side conditions,
// paired with an exhaustive search for integer points.
Certificate certify_hfz(const BigInt& k, const HfzOptions& opt = {});

struct SIntOptions {
  unsigned max_exp = 3;
  BigInt bound = 1000;
};
// Hypotheses of the HF1 (k = 4 + 2 nu^2) or HFTrace0 (k = 4 + 20 nu^2)
// families over Z[1/ell], admissibility, and a bounded search for points.
Certificate certify_sint_failure(const BigInt& k, const BigInt& ell, const SIntOptions& opt = {});
// t admissible and t + 2 certified as above.
Certificate certify_e2_failure(const BigInt& t, const BigInt& ell, const SIntOptions& opt = {});

// A = [[t-5, 2(5nu-2)/3], [6(5nu+2), 5]], t = 2 + 20 nu^2.
MatZ build_hfe1_matrix(const BigInt& nu, const BigInt& ell);
std::vector<long> default_hfe1_moduli();
Certificate verify_hfe1(const BigInt& nu, const BigInt& ell, const std::vector<long>& moduli = default_hfe1_moduli(),
                        const SIntOptions& opt = {});
// Same checks for a caller-supplied matrix (negative controls).
Certificate verify_hfe1_matrix(const MatZ& A, const BigInt& nu, const BigInt& ell, const std::vector<long>& moduli,
                               const SIntOptions& opt = {});

struct Obstruction {
  long q;
  std::string reason;
  bool confirmed;  // commutator_test_modq found no witness
};
std::vector<Obstruction> catalogue_congruence_obstructions(const MatZ& Z);

Mat2L reduce_mod(const MatZ& A, long q);

// Re-run the certificate from its kind and parameters and compare checks.
struct ReplayResult {
  bool identical = false;
  std::vector<std::string> mismatches;
  Certificate replayed;
};
ReplayResult replay_certificate(const json& j);

// Hypothesis helper: every prime factor of n lies in {+-1 mod m}.
bool prime_factors_pm1(const BigInt& n, long m, std::vector<BigInt>* offenders = nullptr);

}  // namespace csl
