#include <iostream>

#include "kstab/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : kstab::run_acceptance()) {
    std::cout << kstab::format_line(r) << "\n";
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all 12 criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  return failed == 0 ? 0 : 1;
}
