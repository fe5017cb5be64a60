// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <cstdio>

#include "loewner/repro.hpp"

int main() {
  using namespace loewner::repro;
  int failed = 0;
  double total = 0.0;
  for (int id : all_criteria()) {
    const CriterionResult r = run_criterion(id);
    total += r.seconds;
    if (!r.passed) ++failed;
    std::printf("%s (%.2f s)\n", format_result(r).c_str(), r.seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed in %.2f s\n", static_cast<int>(all_criteria().size()) - failed,
              all_criteria().size(), total);
  return failed == 0 ? 0 : 1;
}
