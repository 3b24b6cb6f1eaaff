#pragma once

#include <string>
#include <vector>

namespace esvs::cli {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs one verification suite ("wigner", "pnd", "moments", "nongauss",
// "fidelity") or "all". tol is the relative equivalence tolerance (absolute
// floor 1e-9 near zeros); fock_dim > 0 overrides every oracle truncation.
std::vector<CheckResult> run_verify(const std::string& suite, double tol, int fock_dim);

}  // namespace esvs::cli
