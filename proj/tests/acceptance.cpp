// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 on any FAIL.
#include <cstdio>

#include "core/verification.hpp"

int main() {
  int failed = 0;
  const auto n = static_cast<int>(stripshear::acceptance_criterion_count());
  for (int id = 1; id <= n; ++id) {
    const stripshear::CriterionResult r = stripshear::run_acceptance_criterion(id);
    if (!r.passed) ++failed;
    std::printf("%s %2d %s: %s (%.2f s)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.detail.c_str(), r.seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed ? 1 : 0;
}
