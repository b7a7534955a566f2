#pragma once

#include <string>
#include <vector>

namespace kstab {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

/// Runs the twelve acceptance criteria in order.
std::vector<CriterionResult> run_acceptance();

/// "PASS  3  title  (0.012 s)  detail"
std::string format_line(const CriterionResult& r);

}  // namespace kstab
