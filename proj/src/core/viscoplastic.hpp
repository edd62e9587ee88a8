#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "incremental.hpp"
#include "model.hpp"

namespace stripshear {

/// Isotropic hardening law H(S) in dS/dt = H(S) d^p.
struct Hardening {
  enum class Kind { zero, linear, saturating };
  Kind kind{Kind::zero};
  double h0{0.0};
  double S_sat{0.0};

  static Hardening zero() { return {}; }
  static Hardening linear(double h0) { return {Kind::linear, h0, 0.0}; }
  static Hardening saturating(double h0, double S_sat) { return {Kind::saturating, h0, S_sat}; }

  double operator()(double S) const;
  void validate() const;
};

std::string to_string(Hardening::Kind k);

struct ViscoParams {
  PhysicalParams base;
  Hardening hardening;

  /// Also requires m_rate > 0; m_rate = 0 is the rate-independent model.
  void validate() const;
};

/// Fields live on the reference mesh; node i sits at y = h * r_i.
struct ViscoState {
  double t{0.0};
  Field gamma;
  Field S;
  Field gamma_rate;           ///< rate of the last accepted step, Newton warm start
  double dissipated{0.0};     ///< integral of tau_dis q + k_dis q_y over y and t
  double min_dissipation_power{0.0};  ///< last step, over quadrature points
};

ViscoState visco_initial_state(double t0, const ViscoParams& p, MeshPtr mesh);

struct ViscoOptions {
  double newton_tol{1e-10};       ///< max residual, relative to S0 times the smallest cell width
  int max_newton_iters{200};
  double max_dt{0.01};            ///< substep cap in simulate_visco
  int max_dt_halvings{20};
  double rate_regularization{1e-10};  ///< eps_v / d0

  void validate() const;
};

/// One backward-Euler step for gamma followed by the explicit S update.
/// Throws SolverError when Newton fails (retry with a smaller dt).
ViscoState visco_step(const ViscoState& state, double tau_next, double dt, const ViscoParams& p,
                      const ViscoOptions& opts);

struct LoadPoint {
  double t;
  double tau;
};

/// Marches visco_step along the piecewise-linear load history, with substeps
/// no longer than opts.max_dt, halving on Newton failure. Returns one state
/// per load point, the first being the virgin state at load.front().t.
std::vector<ViscoState> simulate_visco(const std::vector<LoadPoint>& load, const ViscoParams& p,
                                       MeshPtr mesh, const ViscoOptions& opts);

/// u(y) = integral from -h to y of (tau / G + gamma), cumulative trapezoid.
Field recover_displacement(const ViscoState& state, double tau, const ViscoParams& p);

/// Renormalized parameters of the rate-independent model reached as m -> 0.
/// The energy here is (kappa/2) int (gamma^2 + Lambda^2 gamma_r^2), so the
/// physical gradient coefficient L^2 / h^2 becomes kappa Lambda^2.
NondimParams rate_independent_params(const PhysicalParams& p);

struct LimitStudyEntry {
  double m_rate;
  double discrepancy;  ///< max |gamma_visco - gamma_incremental| at the final time
  std::size_t time_steps;
};

struct LimitStudy {
  std::vector<LimitStudyEntry> entries;
  Field reference;  ///< final incremental gamma
  bool decreasing{false};
};

/// Proportional ramp tau = tau_max t / t_end in `steps` equal steps for every
/// m in `m_list` (strictly decreasing), each compared with the incremental
/// solution on the same theta grid. Requires zero hardening.
LimitStudy rate_independent_limit_study(const std::vector<double>& m_list, const ViscoParams& p,
                                        MeshPtr mesh, double tau_max, double t_end,
                                        std::size_t steps, const ViscoOptions& vopts,
                                        const SolverOptions& sopts);

}  // namespace stripshear
