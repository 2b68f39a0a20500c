#pragma once
// Self-verification suites: special-function identities, kernel symmetries,
// flat-boundary null results, manufactured solutions, jump relations,
// radiation, flux balance, far-field consistency, resolution independence
// and (full suite) the mollification experiment.
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace helmbie {

enum class Suite { Fast, All };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;  // comparison direction and context
};

std::vector<CheckResult> run_checks(Suite suite);

/// Runs the suite and writes verify_report.json; returns true iff every
/// check passed.
bool run_verify(Suite suite, const std::filesystem::path& output_dir);

nlohmann::json to_json(const CheckResult& check);

}  // namespace helmbie
