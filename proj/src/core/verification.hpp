#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace stripshear {

struct CriterionResult {
  int id{0};
  std::string name;
  bool passed{false};
  std::string detail;  ///< measured quantities against their thresholds
  double seconds{0.0};
};

/// Acceptance criteria are numbered from 1.
std::size_t acceptance_criterion_count();
std::string acceptance_criterion_name(int id);
CriterionResult run_acceptance_criterion(int id);
std::vector<CriterionResult> run_acceptance_suite();

/// Exhaustive nodal search for the increment problem from the virgin state on
/// a 4-cell mesh: coarse grid of step 0.05 on [-1, 3]^3, then step `fine_step`
/// in a +-0.1 box around the coarse winner. Uses its own objective code.
std::vector<double> brute_force_increment(double theta, double kappa, double Lambda,
                                          double lambda, double fine_step = 1e-3);

}  // namespace stripshear
