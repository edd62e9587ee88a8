#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "model.hpp"

namespace stripshear {

struct SolverOptions {
  /// Smoothing continuation for the nonsmooth dissipation, strictly decreasing.
  std::vector<double> epsilon_schedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9};
  double newton_tol{1e-10};     ///< max-norm of the smoothed gradient at the last level
  int max_newton_iters{200};    ///< per smoothing level
  double stability_tol{1e-8};
  double yield_tol{1e-8};       ///< max-norm of gamma declaring plastic flow

  void validate() const;
};

/// Proportional loading: theta is the evolution parameter.
struct LoadProgram {
  std::vector<double> theta_steps;

  /// theta_max split into `steps` equal increments (steps + 1 values).
  static LoadProgram uniform(double theta_max, std::size_t steps);
  void validate() const;
};

struct StepRecord {
  double theta{0.0};
  Field gamma;
  double dissipation_increment{0.0};
  double total_energy{0.0};
};

struct Trajectory {
  NondimParams params;
  std::vector<StepRecord> steps;
};

struct IncrementResult {
  Field gamma;
  double objective_change{0.0};   ///< E(th, gamma) + Psi(gamma - prev) - E(th, prev), unsmoothed
  double gradient_norm{0.0};      ///< smoothed optimality residual at the last level
  int newton_iterations{0};
  bool kept_previous{false};      ///< the unsmoothed objective preferred a zero increment
};

/// Minimizer over zero-boundary nodal fields v of E(theta, v) + Psi(v - gamma_prev).
IncrementResult increment_solve_detailed(const Field& gamma_prev, double theta,
                                         const NondimParams& p, const SolverOptions& opts);

inline Field increment_solve(const Field& gamma_prev, double theta, const NondimParams& p,
                             const SolverOptions& opts) {
  return increment_solve_detailed(gamma_prev, theta, p, opts).gamma;
}

/// Sequential incremental minimization from the virgin state.
Trajectory evolve(const LoadProgram& load, const NondimParams& p, MeshPtr mesh,
                  const SolverOptions& opts);

/// max(0, E(theta, gamma) - min_v [E(theta, v) + Psi(v - gamma)]).
double stability_residual(const Field& gamma, double theta, const NondimParams& p,
                          const SolverOptions& opts);

/// | E(theta_N, gamma_N) + sum_k Psi(gamma_k - gamma_{k-1})
///   + sum_k (theta_k - theta_{k-1}) (mass_k + mass_{k-1}) / 2 |.
double energy_balance_residual(const Trajectory& traj);

struct YieldDetection {
  double theta{0.0};        ///< last load value with gamma still zero
  double uncertainty{0.0};  ///< size of the following load step
  bool yielded{false};      ///< false: the whole trajectory stayed below yield_tol
  std::size_t step{0};
};

YieldDetection detect_yield(const Trajectory& traj, const SolverOptions& opts);

}  // namespace stripshear
