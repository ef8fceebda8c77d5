#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace psdo::acceptance {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  bool pass() const;
};

inline constexpr int kCriterionCount = 9;

std::string criterion_title(int id);
/// Runs one criterion; exceptions become a failed check.
CriterionResult run_criterion(int id, int jobs = 1);

/// "criterion1".."criterion9" and "all".
std::vector<std::string> suite_names();

/// One PASS/FAIL line per criterion followed by indented sub-check lines.
void print(const CriterionResult& r, std::ostream& out);

/// Runs a named suite, printing results; returns 0 iff every check passed.
/// Throws std::invalid_argument for unknown suites.
int run_suite(const std::string& name, std::ostream& out, int jobs = 1);

}  // namespace psdo::acceptance
