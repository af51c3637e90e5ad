#pragma once

// Aggregated property suite over all library modules, behind the cli
// `verify` command.  Each check is deterministic for a fixed seed.

#include <string>
#include <vector>

namespace curvosc {

struct CheckResult {
  std::string name;    // module.property
  bool pass = false;
  std::string detail;  // worst-case figure or failure description
};

std::vector<CheckResult> run_selftest(unsigned seed = 0);

}  // namespace curvosc
