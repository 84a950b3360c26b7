#pragma once

// End-to-end acceptance checks: one entry per shipped guarantee, each runs at
// its pinned tolerance and reports a single pass/fail line.  Used by both the
// `check` CLI subcommand and the ctest acceptance binary.

#include <iosfwd>
#include <string>
#include <vector>

namespace qcavity {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Run all criteria (or a single one when `only` > 0).
std::vector<CriterionResult> run_acceptance(int only = 0);

/// One line per criterion; returns the number of failures.
int print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace qcavity
