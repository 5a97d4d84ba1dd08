#pragma once

// The oracle suite behind `dtk verify`: every closed form checked against an
// independent route, each check carrying its measured value and tolerance.

#include <string>
#include <vector>

#include <json.hpp>

#include "dtk/riley.hpp"

namespace dtk::cli {

struct Check {
  std::string name;
  double value = 0.0;      // measured discrepancy (0 for exact checks that hold)
  double tolerance = 0.0;  // pass iff value <= tolerance
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int samples = 128;         // trace samples per permitted branch
  double oracle_tol = 1e-9;  // matrix oracle tolerance (relative)
  /// Test hook: corrupts one input of the named check so it must fail.
  std::string inject_fault;
};

struct Report {
  riley::KnotParams knot;
  std::vector<Check> checks;

  bool passed() const;
  const Check* first_failure() const;
  nlohmann::json to_json() const;
};

Report run_verification(const riley::KnotParams& k, const VerifyOptions& opt);

/// Names of the checks that accept fault injection.
std::vector<std::string> fault_targets();

}  // namespace dtk::cli
