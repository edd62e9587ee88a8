#include "incremental.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"
#include "functionals.hpp"
#include "smoothing.hpp"

namespace stripshear {

void SolverOptions::validate() const {
  if (epsilon_schedule.empty()) throw ValidationError("epsilon_schedule must not be empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    if (!(epsilon_schedule[i] > 0.0) || !std::isfinite(epsilon_schedule[i]))
      throw ValidationError("epsilon_schedule entries must be positive");
    if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1]))
      throw ValidationError("epsilon_schedule must be strictly decreasing");
  }
  if (epsilon_schedule.back() > 1e-8)
    throw ValidationError("last epsilon_schedule entry must be <= 1e-8");
  if (!(newton_tol > 0.0)) throw ValidationError("newton_tol must be positive");
  if (max_newton_iters < 1) throw ValidationError("max_newton_iters must be >= 1");
  if (!(stability_tol > 0.0)) throw ValidationError("stability_tol must be positive");
  if (!(yield_tol > 0.0)) throw ValidationError("yield_tol must be positive");
}

LoadProgram LoadProgram::uniform(double theta_max, std::size_t steps) {
  if (!(theta_max > 0.0) || !std::isfinite(theta_max))
    throw ValidationError("theta_max must be positive");
  if (steps < 1) throw ValidationError("steps must be >= 1");
  LoadProgram load;
  load.theta_steps.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k)
    load.theta_steps[k] = theta_max * static_cast<double>(k) / static_cast<double>(steps);
  return load;
}

void LoadProgram::validate() const {
  if (theta_steps.empty()) throw ValidationError("load program is empty");
  if (theta_steps.front() != 0.0) throw ValidationError("load program must start at theta = 0");
  for (std::size_t k = 1; k < theta_steps.size(); ++k) {
    if (!(theta_steps[k] > theta_steps[k - 1]) || !std::isfinite(theta_steps[k]))
      throw ValidationError("load program must be strictly increasing");
  }
}

namespace {

void check_params(const NondimParams& p) {
  p.validate();
  if (p.kappa <= 0.0)
    throw ValidationError(
        "kappa must be positive: with kappa = 0 the stored energy vanishes and the increment "
        "problem loses strict convexity");
}

// Objective of the increment delta = v - gamma_prev, shifted so that the zero
// increment has value 0:
//   F(delta) = b . delta + 1/2 delta^T A delta + Psi_eps(delta),
// with A the energy Hessian and b = A gamma_prev - theta * trapezoid weights.
class IncrementProblem {
public:
  IncrementProblem(const Field& prev, double theta, const NondimParams& p)
      : nodes_(prev.mesh().nodes()), lambda_(p.lambda), n_(prev.size()), energy_(n_), base_(n_) {
    const double L2 = p.Lambda * p.Lambda;
    for (std::size_t c = 0; c + 1 < n_; ++c) {
      const double h = nodes_[c + 1] - nodes_[c];
      const double d = p.kappa * (h / 3.0 + L2 / h);
      const double o = p.kappa * (h / 6.0 - L2 / h);
      energy_.diag[c] += d;
      energy_.diag[c + 1] += d;
      energy_.upper[c] += o;
      energy_.lower[c + 1] += o;
    }
    const auto g = prev.values();
    const auto w = prev.mesh().trapezoid_weights();
    for (std::size_t i = 0; i < n_; ++i) {
      double a = energy_.diag[i] * g[i];
      if (i > 0) a += energy_.lower[i] * g[i - 1];
      if (i + 1 < n_) a += energy_.upper[i] * g[i + 1];
      base_[i] = a - theta * w[i];
    }
  }

  std::size_t size() const { return n_; }

  double value(const std::vector<double>& delta, double eps) const {
    return evaluate(delta, eps, {}, nullptr);
  }

  double evaluate(const std::vector<double>& delta, double eps, std::span<double> grad,
                  Tridiagonal* hess) const {
    double lin = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      double ad = energy_.diag[i] * delta[i];
      if (i > 0) ad += energy_.lower[i] * delta[i - 1];
      if (i + 1 < n_) ad += energy_.upper[i] * delta[i + 1];
      lin += base_[i] * delta[i];
      quad += delta[i] * ad;
      if (!grad.empty()) grad[i] = base_[i] + ad;
    }
    if (hess) {
      *hess = energy_;
    }
    const double psi =
        detail::smoothed_dissipation(nodes_, delta, lambda_, eps, default_cell_rule(), grad, hess);
    return lin + 0.5 * quad + psi;
  }

private:
  std::span<const double> nodes_;
  double lambda_;
  std::size_t n_;
  Tridiagonal energy_;
  std::vector<double> base_;
};

double interior_max_abs(const std::vector<double>& g) {
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) m = std::max(m, std::abs(g[i]));
  return m;
}

// Damped Newton on the interior unknowns at a fixed smoothing level. Returns
// the final gradient max-norm; iterations are added to `iters`.
double newton_level(const IncrementProblem& prob, std::vector<double>& delta, double eps,
                    double tol, int max_iters, int& iters) {
  const std::size_t n = prob.size();
  const std::size_t m = n - 2;
  std::vector<double> grad(n, 0.0), trial(n, 0.0), rhs(m);
  Tridiagonal hess(n), inner(m);
  double f = prob.evaluate(delta, eps, grad, &hess);
  double gnorm = interior_max_abs(grad);
  for (int it = 0; it < max_iters && gnorm > tol; ++it) {
    ++iters;
    for (std::size_t i = 0; i < m; ++i) {
      inner.diag[i] = hess.diag[i + 1];
      inner.lower[i] = hess.lower[i + 1];
      inner.upper[i] = hess.upper[i + 1];
      rhs[i] = -grad[i + 1];
    }
    const std::vector<double> step = inner.solve(rhs);
    double slope = 0.0;
    for (std::size_t i = 0; i < m; ++i) slope += grad[i + 1] * step[i];
    if (!(slope < 0.0)) break;
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      trial = delta;
      for (std::size_t i = 0; i < m; ++i) trial[i + 1] += alpha * step[i];
      const double ft = prob.value(trial, eps);
      if (ft <= f + 1e-4 * alpha * slope) {
        accepted = true;
        break;
      }
      // Near convergence at small eps the predicted decrease falls below the
      // rounding of f; fall back to requiring a smaller gradient.
      if (ft - f <= 1e-12 * std::abs(f)) {
        std::vector<double> g_trial(n, 0.0);
        prob.evaluate(trial, eps, g_trial, nullptr);
        if (interior_max_abs(g_trial) < gnorm) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    delta.swap(trial);
    f = prob.evaluate(delta, eps, grad, &hess);
    gnorm = interior_max_abs(grad);
  }
  return gnorm;
}

}  // namespace

IncrementResult increment_solve_detailed(const Field& gamma_prev, double theta,
                                         const NondimParams& p, const SolverOptions& opts) {
  check_params(p);
  opts.validate();
  if (!gamma_prev.has_zero_boundary())
    throw ValidationError("previous state must satisfy zero boundary values");
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  if (gamma_prev.size() < 3) throw ValidationError("mesh too coarse for an increment solve");

  const IncrementProblem prob(gamma_prev, theta, p);
  std::vector<double> delta(prob.size(), 0.0);
  IncrementResult result;
  double gnorm = 0.0;
  for (std::size_t level = 0; level < opts.epsilon_schedule.size(); ++level) {
    const double eps = opts.epsilon_schedule[level];
    const bool last = level + 1 == opts.epsilon_schedule.size();
    const double tol = last ? opts.newton_tol : std::max(opts.newton_tol, 1e-3 * eps);
    if (level > 0) {
      // Below yield the smoothed minimizer is O(eps); rescaling the previous
      // level's solution is then a far better start than the solution itself.
      std::vector<double> scaled = delta;
      const double ratio = eps / opts.epsilon_schedule[level - 1];
      for (double& d : scaled) d *= ratio;
      if (prob.value(scaled, eps) < prob.value(delta, eps)) delta.swap(scaled);
    }
    gnorm = newton_level(prob, delta, eps, tol, opts.max_newton_iters, result.newton_iterations);
    if (last && gnorm > opts.newton_tol)
      throw SolverError("increment Newton solve did not converge (gradient norm " +
                            std::to_string(gnorm) + ")",
                        gnorm);
  }
  result.gradient_norm = gnorm;

  // Candidate comparison on the unsmoothed objective: the zero increment has
  // value 0 and wins ties.
  const double change = prob.value(delta, 0.0);
  std::vector<double> v(gamma_prev.values().begin(), gamma_prev.values().end());
  if (change >= 0.0) {
    result.kept_previous = true;
    result.objective_change = 0.0;
  } else {
    result.objective_change = change;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) v[i] += delta[i];
  }
  result.gamma = Field(gamma_prev.mesh_ptr(), std::move(v));
  return result;
}

Trajectory evolve(const LoadProgram& load, const NondimParams& p, MeshPtr mesh,
                  const SolverOptions& opts) {
  load.validate();
  check_params(p);
  opts.validate();
  Trajectory traj;
  traj.params = p;
  traj.steps.reserve(load.theta_steps.size());
  Field gamma(mesh);
  traj.steps.push_back(StepRecord{0.0, gamma, 0.0, total_energy(0.0, gamma, p)});
  for (std::size_t k = 1; k < load.theta_steps.size(); ++k) {
    const double theta = load.theta_steps[k];
    Field next;
    try {
      next = increment_solve(gamma, theta, p, opts);
    } catch (const SolverError& e) {
      throw SolverError("step " + std::to_string(k) + " (theta = " + std::to_string(theta) +
                            "): " + e.what(),
                        e.residual());
    }
    const double dis = dissipation_distance(next, gamma, p.lambda);
    traj.steps.push_back(StepRecord{theta, next, dis, total_energy(theta, next, p)});
    gamma = std::move(next);
  }
  return traj;
}

double stability_residual(const Field& gamma, double theta, const NondimParams& p,
                          const SolverOptions& opts) {
  const IncrementResult r = increment_solve_detailed(gamma, theta, p, opts);
  return std::max(0.0, -r.objective_change);
}

double energy_balance_residual(const Trajectory& traj) {
  if (traj.steps.empty()) throw ValidationError("empty trajectory");
  const auto& last = traj.steps.back();
  double dis = 0.0, work = 0.0;
  for (std::size_t k = 1; k < traj.steps.size(); ++k) {
    const auto& a = traj.steps[k - 1];
    const auto& b = traj.steps[k];
    dis += b.dissipation_increment;
    work += (b.theta - a.theta) * 0.5 * (a.gamma.mass() + b.gamma.mass());
  }
  return std::abs(total_energy(last.theta, last.gamma, traj.params) + dis + work);
}

YieldDetection detect_yield(const Trajectory& traj, const SolverOptions& opts) {
  if (traj.steps.empty()) throw ValidationError("empty trajectory");
  YieldDetection out;
  for (std::size_t k = 0; k < traj.steps.size(); ++k) {
    if (traj.steps[k].gamma.max_abs() > opts.yield_tol) {
      if (k == 0) throw ValidationError("trajectory does not start from the virgin state");
      out.step = k - 1;
      out.theta = traj.steps[k - 1].theta;
      out.uncertainty = traj.steps[k].theta - traj.steps[k - 1].theta;
      out.yielded = true;
      return out;
    }
  }
  out.step = traj.steps.size() - 1;
  out.theta = traj.steps.back().theta;
  out.uncertainty = traj.steps.size() > 1 ? out.theta - traj.steps[out.step - 1].theta : 0.0;
  out.yielded = false;
  return out;
}

}  // namespace stripshear
