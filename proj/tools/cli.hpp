#pragma once
// Command-line front end. run() never calls exit(); it returns the process
// exit code: 0 computed (any verdict), 2 invalid input, 3 budget exhausted,
// 1 internal error or repro diff.

#include "csl/certify.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace csl::cli {

enum ExitCode { kOk = 0, kInternal = 1, kInvalid = 2, kBudget = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Indented key: value rendering of the same data the JSON carries.
std::string render_text(const json& j);

// Reports for `repro`; ids: t1, rt, genus329, classnumbers, hfu2-images.
std::vector<std::string> repro_ids();
std::string repro_report(const std::string& id);
std::string expected_dir();

}  // namespace csl::cli
