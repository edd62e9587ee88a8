#include "stripshear/stripshear.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/incremental.hpp"
#include "core/model.hpp"
#include "core/verification.hpp"
#include "core/viscoplastic.hpp"
#include "core/yield.hpp"

using namespace stripshear;

struct stripshear_profile {
  ProfileResult result;
};

struct stripshear_trajectory {
  Trajectory traj;
};

struct stripshear_visco_run {
  ViscoParams params;
  std::vector<double> tau;
  std::vector<ViscoState> states;
};

namespace {

thread_local std::string g_last_error;

template <class F>
stripshear_status guard(F&& f) {
  try {
    f();
    return STRIPSHEAR_OK;
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return STRIPSHEAR_INVALID_ARGUMENT;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return STRIPSHEAR_DOMAIN_ERROR;
  } catch (const SolverError& e) {
    g_last_error = e.what();
    return STRIPSHEAR_SOLVER_ERROR;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return STRIPSHEAR_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return STRIPSHEAR_INTERNAL_ERROR;
  } catch (...) {
    g_last_error = "unknown error";
    return STRIPSHEAR_INTERNAL_ERROR;
  }
}

void require(const void* ptr, const char* name) {
  if (!ptr) throw ValidationError(std::string(name) + " must not be NULL");
}

void require_capacity(size_t have, size_t need) {
  if (have < need)
    throw ValidationError("output capacity " + std::to_string(have) + " is smaller than " +
                          std::to_string(need));
}

PhysicalParams to_core(const stripshear_physical_params& p) {
  return {p.S0, p.kappa, p.L, p.ell, p.h, p.G, p.d0, p.m_rate};
}

NondimParams to_core(const stripshear_nondim_params& p) { return {p.lambda, p.Lambda, p.kappa}; }

SolverOptions to_core(const stripshear_solver_options* o) {
  SolverOptions s;
  if (!o) return s;
  if (!(o->epsilon_start > 0.0) || !(o->epsilon_end > 0.0) || o->epsilon_end > o->epsilon_start)
    throw ValidationError("need 0 < epsilon_end <= epsilon_start");
  s.epsilon_schedule.clear();
  for (double e = o->epsilon_start; e >= o->epsilon_end * (1.0 - 1e-9); e /= 10.0)
    s.epsilon_schedule.push_back(e);
  s.newton_tol = o->newton_tol;
  s.max_newton_iters = o->max_newton_iters;
  s.stability_tol = o->stability_tol;
  s.yield_tol = o->yield_tol;
  s.validate();
  return s;
}

ViscoParams to_core(const stripshear_visco_params& p) {
  ViscoParams v;
  v.base = to_core(p.base);
  switch (p.hardening) {
    case STRIPSHEAR_HARDENING_ZERO: v.hardening = Hardening::zero(); break;
    case STRIPSHEAR_HARDENING_LINEAR: v.hardening = Hardening::linear(p.h0); break;
    case STRIPSHEAR_HARDENING_SATURATING: v.hardening = Hardening::saturating(p.h0, p.S_sat); break;
    default: throw ValidationError("unknown hardening kind");
  }
  return v;
}

ViscoOptions to_core(const stripshear_visco_options* o) {
  ViscoOptions v;
  if (!o) return v;
  v.newton_tol = o->newton_tol;
  v.max_newton_iters = o->max_newton_iters;
  v.max_dt = o->max_dt;
  v.max_dt_halvings = o->max_dt_halvings;
  v.rate_regularization = o->rate_regularization;
  v.validate();
  return v;
}

Field uniform_field(const double* values, size_t n_nodes) {
  require(values, "values");
  if (n_nodes < 3) throw ValidationError("need at least 3 nodes");
  return Field(make_mesh(n_nodes - 1), std::vector<double>(values, values + n_nodes));
}

void copy_out(std::span<const double> src, double* dst, size_t capacity) {
  require(dst, "values");
  require_capacity(capacity, src.size());
  std::copy(src.begin(), src.end(), dst);
}

const ViscoState& visco_state_at(const stripshear_visco_run* run, size_t k) {
  require(run, "run");
  if (k >= run->states.size()) throw ValidationError("state index out of range");
  return run->states[k];
}

}  // namespace

extern "C" {

const char* stripshear_last_error(void) { return g_last_error.c_str(); }

const char* stripshear_version(void) { return "1.0.0"; }

const char* stripshear_status_name(stripshear_status s) {
  switch (s) {
    case STRIPSHEAR_OK: return "ok";
    case STRIPSHEAR_INVALID_ARGUMENT: return "invalid argument";
    case STRIPSHEAR_DOMAIN_ERROR: return "domain error";
    case STRIPSHEAR_SOLVER_ERROR: return "solver error";
    case STRIPSHEAR_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

void stripshear_default_physical_params(stripshear_physical_params* out) {
  if (!out) return;
  const PhysicalParams p;
  *out = {p.S0, p.kappa, p.L, p.ell, p.h, p.G, p.d0, p.m_rate};
}

void stripshear_default_solver_options(stripshear_solver_options* out) {
  if (!out) return;
  const SolverOptions s;
  *out = {s.epsilon_schedule.front(), s.epsilon_schedule.back(), s.newton_tol,
          s.max_newton_iters,         s.stability_tol,           s.yield_tol};
}

stripshear_status stripshear_nondimensionalize(const stripshear_physical_params* p,
                                               stripshear_nondim_params* out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    const NondimParams n = nondimensionalize(to_core(*p));
    *out = {n.lambda, n.Lambda, n.kappa};
  });
}

stripshear_status stripshear_local_flow_response(double theta, double kappa, double* out) {
  return guard([&] {
    require(out, "out");
    *out = local_flow_response(theta, kappa);
  });
}

stripshear_status stripshear_local_energy_balance_residual(const double* theta_grid, size_t n,
                                                           double kappa, double* out) {
  return guard([&] {
    require(theta_grid, "theta_grid");
    require(out, "out");
    *out = local_energy_balance_residual(std::span<const double>(theta_grid, n), kappa);
  });
}

stripshear_status stripshear_plastic_energy(const double* gamma, size_t n_nodes,
                                            const stripshear_nondim_params* p, double* out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    *out = plastic_energy(uniform_field(gamma, n_nodes), to_core(*p));
  });
}

stripshear_status stripshear_dissipation(const double* gamma, size_t n_nodes, double lambda,
                                         double* out) {
  return guard([&] {
    require(out, "out");
    *out = dissipation(uniform_field(gamma, n_nodes), lambda);
  });
}

stripshear_status stripshear_relaxed_dissipation(const double* phi, size_t n_nodes, double lambda,
                                                 double* out) {
  return guard([&] {
    require(out, "out");
    *out = relaxed_dissipation(RelaxedField(uniform_field(phi, n_nodes)), lambda);
  });
}

stripshear_status stripshear_total_energy(double theta, const double* gamma, size_t n_nodes,
                                          const stripshear_nondim_params* p, double* out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    *out = total_energy(theta, uniform_field(gamma, n_nodes), to_core(*p));
  });
}

stripshear_status stripshear_lambda_of_theta(double theta_Y, double* out) {
  return guard([&] {
    require(out, "out");
    *out = lambda_of_theta(theta_Y);
  });
}

stripshear_status stripshear_theta_of_lambda(double lambda, double* out) {
  return guard([&] {
    require(out, "out");
    *out = theta_of_lambda(lambda);
  });
}

stripshear_status stripshear_yield_integral(double theta_Y, size_t n_quad, double* out) {
  return guard([&] {
    require(out, "out");
    if (n_quad < 1) throw ValidationError("n_quad must be >= 1");
    *out = yield_integral(theta_Y, n_quad);
  });
}

stripshear_status stripshear_yield_integral_converged(double theta_Y, double* out) {
  return guard([&] {
    require(out, "out");
    *out = yield_integral_converged(theta_Y);
  });
}

stripshear_status stripshear_asymptotic_theta(double lambda, double* small_regime,
                                              double* large_regime) {
  return guard([&] {
    require(small_regime, "small_regime");
    require(large_regime, "large_regime");
    const AsymptoticTheta a = asymptotic_theta(lambda);
    *small_regime = a.small_regime;
    *large_regime = a.large_regime;
  });
}

stripshear_status stripshear_yield_variational(double lambda, size_t n_cells,
                                               const stripshear_solver_options* opts,
                                               stripshear_variational_result* out) {
  return guard([&] {
    require(out, "out");
    const YieldResult y = yield_variational(lambda, make_mesh(n_cells), to_core(opts));
    *out = {y.theta_Y, y.residual, y.multiplier, y.iterations};
  });
}

stripshear_status stripshear_profile_create(double lambda, size_t n_intervals,
                                            stripshear_profile** out) {
  return guard([&] {
    require(out, "out");
    *out = nullptr;
    auto* p = new stripshear_profile{minimizer_profile(lambda, n_intervals)};
    *out = p;
  });
}

void stripshear_profile_destroy(stripshear_profile* p) { delete p; }

stripshear_status stripshear_profile_get_summary(const stripshear_profile* p,
                                                 stripshear_profile_summary* out) {
  return guard([&] {
    require(p, "profile");
    require(out, "out");
    const ProfileResult& r = p->result;
    *out = {r.lambda, r.theta_Y, r.jump_ratio, r.mass, r.relaxed_dissipation, r.endpoint_error,
            r.r.size()};
  });
}

stripshear_status stripshear_profile_get_samples(const stripshear_profile* p, double* r,
                                                 double* zeta, double* phi, size_t capacity) {
  return guard([&] {
    require(p, "profile");
    const ProfileResult& res = p->result;
    const size_t n = res.r.size();
    copy_out(res.r, r, capacity);
    copy_out(res.zeta, zeta, capacity);
    require(phi, "phi");
    require_capacity(capacity, n);
    const auto v = res.phi.values();
    std::copy(v.begin() + static_cast<std::ptrdiff_t>(v.size() - n), v.end(), phi);
  });
}

stripshear_status stripshear_evolve(const stripshear_nondim_params* p, size_t n_cells,
                                    double theta_max, size_t steps,
                                    const stripshear_solver_options* opts,
                                    stripshear_trajectory** out) {
  return guard([&] {
    require(p, "params");
    require(out, "out");
    *out = nullptr;
    auto* t = new stripshear_trajectory{
        evolve(LoadProgram::uniform(theta_max, steps), to_core(*p), make_mesh(n_cells),
               to_core(opts))};
    *out = t;
  });
}

void stripshear_trajectory_destroy(stripshear_trajectory* t) { delete t; }

size_t stripshear_trajectory_step_count(const stripshear_trajectory* t) {
  return t ? t->traj.steps.size() : 0;
}

size_t stripshear_trajectory_node_count(const stripshear_trajectory* t) {
  return t && !t->traj.steps.empty() ? t->traj.steps.front().gamma.size() : 0;
}

stripshear_status stripshear_trajectory_step(const stripshear_trajectory* t, size_t k,
                                             stripshear_step_info* out) {
  return guard([&] {
    require(t, "trajectory");
    require(out, "out");
    if (k >= t->traj.steps.size()) throw ValidationError("step index out of range");
    const StepRecord& s = t->traj.steps[k];
    *out = {s.theta, s.gamma.max_abs(), s.gamma.mass(), s.dissipation_increment, s.total_energy};
  });
}

stripshear_status stripshear_trajectory_gamma(const stripshear_trajectory* t, size_t k,
                                              double* values, size_t capacity) {
  return guard([&] {
    require(t, "trajectory");
    if (k >= t->traj.steps.size()) throw ValidationError("step index out of range");
    copy_out(t->traj.steps[k].gamma.values(), values, capacity);
  });
}

stripshear_status stripshear_trajectory_stability_residual(const stripshear_trajectory* t,
                                                           size_t k,
                                                           const stripshear_solver_options* opts,
                                                           double* out) {
  return guard([&] {
    require(t, "trajectory");
    require(out, "out");
    if (k >= t->traj.steps.size()) throw ValidationError("step index out of range");
    const StepRecord& s = t->traj.steps[k];
    *out = stability_residual(s.gamma, s.theta, t->traj.params, to_core(opts));
  });
}

stripshear_status stripshear_trajectory_energy_balance(const stripshear_trajectory* t,
                                                       double* out) {
  return guard([&] {
    require(t, "trajectory");
    require(out, "out");
    *out = energy_balance_residual(t->traj);
  });
}

stripshear_status stripshear_trajectory_detect_yield(const stripshear_trajectory* t,
                                                     const stripshear_solver_options* opts,
                                                     stripshear_yield_detection* out) {
  return guard([&] {
    require(t, "trajectory");
    require(out, "out");
    const YieldDetection d = detect_yield(t->traj, to_core(opts));
    *out = {d.theta, d.uncertainty, d.yielded ? 1 : 0, d.step};
  });
}

void stripshear_default_visco_options(stripshear_visco_options* out) {
  if (!out) return;
  const ViscoOptions v;
  *out = {v.newton_tol, v.max_newton_iters, v.max_dt, v.max_dt_halvings, v.rate_regularization};
}

stripshear_status stripshear_visco_simulate(const stripshear_visco_params* p, size_t n_cells,
                                            const double* t, const double* tau, size_t n_load,
                                            const stripshear_visco_options* opts,
                                            stripshear_visco_run** out) {
  return guard([&] {
    require(p, "params");
    require(t, "t");
    require(tau, "tau");
    require(out, "out");
    *out = nullptr;
    std::vector<LoadPoint> load(n_load);
    for (size_t k = 0; k < n_load; ++k) load[k] = {t[k], tau[k]};
    auto* run = new stripshear_visco_run;
    try {
      run->params = to_core(*p);
      run->tau.assign(tau, tau + n_load);
      run->states = simulate_visco(load, run->params, make_mesh(n_cells), to_core(opts));
    } catch (...) {
      delete run;
      throw;
    }
    *out = run;
  });
}

void stripshear_visco_run_destroy(stripshear_visco_run* run) { delete run; }

size_t stripshear_visco_state_count(const stripshear_visco_run* run) {
  return run ? run->states.size() : 0;
}

size_t stripshear_visco_node_count(const stripshear_visco_run* run) {
  return run && !run->states.empty() ? run->states.front().gamma.size() : 0;
}

stripshear_status stripshear_visco_nodes(const stripshear_visco_run* run, double* y,
                                         size_t capacity) {
  return guard([&] {
    const ViscoState& s = visco_state_at(run, 0);
    const auto r = s.gamma.mesh().nodes();
    require(y, "y");
    require_capacity(capacity, r.size());
    for (size_t i = 0; i < r.size(); ++i) y[i] = run->params.base.h * r[i];
  });
}

stripshear_status stripshear_visco_state(const stripshear_visco_run* run, size_t k,
                                         stripshear_visco_state_info* out) {
  return guard([&] {
    const ViscoState& s = visco_state_at(run, k);
    require(out, "out");
    const auto S = s.S.values();
    const auto [lo, hi] = std::minmax_element(S.begin(), S.end());
    *out = {s.t, s.gamma.max_abs(), 0.5 * s.gamma.mass(), *lo, *hi, s.dissipated};
  });
}

stripshear_status stripshear_visco_gamma(const stripshear_visco_run* run, size_t k,
                                         double* values, size_t capacity) {
  return guard([&] { copy_out(visco_state_at(run, k).gamma.values(), values, capacity); });
}

stripshear_status stripshear_visco_displacement(const stripshear_visco_run* run, size_t k,
                                                double* values, size_t capacity) {
  return guard([&] {
    const ViscoState& s = visco_state_at(run, k);
    const Field u = recover_displacement(s, run->tau[k], run->params);
    copy_out(u.values(), values, capacity);
  });
}

stripshear_status stripshear_visco_limit_study(const stripshear_visco_params* p, size_t n_cells,
                                               const double* m_list, size_t n_m, double tau_max,
                                               double t_end, size_t steps, double* discrepancies,
                                               int* decreasing) {
  return guard([&] {
    require(p, "params");
    require(m_list, "m_list");
    require(discrepancies, "discrepancies");
    require(decreasing, "decreasing");
    const LimitStudy study = rate_independent_limit_study(
        std::vector<double>(m_list, m_list + n_m), to_core(*p), make_mesh(n_cells), tau_max,
        t_end, steps, ViscoOptions{}, SolverOptions{});
    for (size_t k = 0; k < n_m; ++k) discrepancies[k] = study.entries[k].discrepancy;
    *decreasing = study.decreasing ? 1 : 0;
  });
}

size_t stripshear_verify_count(void) { return acceptance_criterion_count(); }

stripshear_status stripshear_verify_run(int id, stripshear_criterion_result* out) {
  return guard([&] {
    require(out, "out");
    const CriterionResult r = run_acceptance_criterion(id);
    out->id = r.id;
    out->passed = r.passed ? 1 : 0;
    out->seconds = r.seconds;
    std::snprintf(out->name, sizeof out->name, "%s", r.name.c_str());
    std::snprintf(out->detail, sizeof out->detail, "%s", r.detail.c_str());
  });
}

}  // extern "C"
