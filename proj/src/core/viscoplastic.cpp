#include "viscoplastic.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "error.hpp"
#include "quadrature.hpp"
#include "tridiagonal.hpp"

namespace stripshear {

double Hardening::operator()(double S) const {
  switch (kind) {
    case Kind::zero: return 0.0;
    case Kind::linear: return h0;
    case Kind::saturating: return h0 * (1.0 - S / S_sat);
  }
  return 0.0;
}

void Hardening::validate() const {
  if (kind == Kind::zero) return;
  if (!std::isfinite(h0) || h0 < 0.0)
    throw ValidationError("hardening modulus h0 must be finite and nonnegative");
  if (kind == Kind::saturating && (!std::isfinite(S_sat) || S_sat <= 0.0))
    throw ValidationError("saturation strength S_sat must be finite and positive");
}

std::string to_string(Hardening::Kind k) {
  switch (k) {
    case Hardening::Kind::zero: return "zero";
    case Hardening::Kind::linear: return "linear";
    case Hardening::Kind::saturating: return "saturating";
  }
  return "unknown";
}

namespace {

// PhysicalParams checks, except that L = 0 and ell = 0 are admitted: the
// rate-dependent balance stays well posed and reduces to the local ODE.
void validate_base(const PhysicalParams& p) {
  PhysicalParams q = p;
  if (q.L == 0.0) q.L = 1.0;
  if (q.ell == 0.0) q.ell = 1.0;
  q.validate();
}

}  // namespace

void ViscoParams::validate() const {
  validate_base(base);
  hardening.validate();
  if (!(base.m_rate > 0.0))
    throw ValidationError("m_rate must be positive for the viscoplastic solver");
}

void ViscoOptions::validate() const {
  if (!(newton_tol > 0.0)) throw ValidationError("visco newton_tol must be positive");
  if (max_newton_iters < 1) throw ValidationError("visco max_newton_iters must be >= 1");
  if (!(max_dt > 0.0) || !std::isfinite(max_dt))
    throw ValidationError("max_dt must be finite and positive");
  if (max_dt_halvings < 0) throw ValidationError("max_dt_halvings must be >= 0");
  if (!(rate_regularization > 0.0))
    throw ValidationError("rate_regularization must be positive");
}

ViscoState visco_initial_state(double t0, const ViscoParams& p, MeshPtr mesh) {
  p.validate();
  if (!mesh) throw ValidationError("mesh required");
  ViscoState s;
  s.t = t0;
  s.gamma = Field(mesh);
  s.S = Field(mesh, std::vector<double>(mesh->size(), p.base.S0));
  s.gamma_rate = Field(mesh);
  return s;
}

namespace {

class StepProblem {
public:
  StepProblem(const ViscoState& s, double tau, double dt, const ViscoParams& p,
              const ViscoOptions& opts)
      : s_(s), tau_(tau), dt_(dt), p_(p.base), eps_(opts.rate_regularization * p.base.d0),
        n_(s.gamma.size()) {
    const auto r = s.gamma.mesh().nodes();
    y_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) y_[i] = p_.h * r[i];
  }

  std::size_t size() const { return n_; }

  double min_width() const {
    double w = y_[1] - y_[0];
    for (std::size_t c = 1; c + 1 < n_; ++c) w = std::min(w, y_[c + 1] - y_[c]);
    return w;
  }

  // Residual of the weak balance at the interior nodes; boundary rows pin q = 0.
  void evaluate(const std::vector<double>& q, std::vector<double>& res, Tridiagonal* jac) const {
    std::fill(res.begin(), res.end(), 0.0);
    if (jac) jac->fill_zero();
    const auto g0 = s_.gamma.values();
    const auto S = s_.S.values();
    const double mk = p_.S0 * p_.kappa;
    const double st = p_.S0 * p_.L * p_.L;
    const double l2 = p_.ell * p_.ell;
    const double kd0 = p_.S0 * l2;
    const double m = p_.m_rate;
    const QuadratureRule& rule = default_cell_rule();
    for (std::size_t c = 0; c + 1 < n_; ++c) {
      const std::size_t a = c, b = c + 1;
      const double hc = y_[b] - y_[a];
      const double ga = g0[a] + dt_ * q[a], gb = g0[b] + dt_ * q[b];
      res[a] += mk * hc * (2.0 * ga + gb) / 6.0 - st * (gb - ga) / hc - 0.5 * tau_ * hc;
      res[b] += mk * hc * (ga + 2.0 * gb) / 6.0 + st * (gb - ga) / hc - 0.5 * tau_ * hc;
      if (jac) {
        jac->diag[a] += dt_ * (mk * hc / 3.0 + st / hc);
        jac->diag[b] += dt_ * (mk * hc / 3.0 + st / hc);
        jac->upper[a] += dt_ * (mk * hc / 6.0 - st / hc);
        jac->lower[b] += dt_ * (mk * hc / 6.0 - st / hc);
      }
      const double qy = (q[b] - q[a]) / hc;
      for (std::size_t k = 0; k < rule.points(); ++k) {
        const double xi = rule.abscissae[k];
        const double hw = hc * rule.weights[k];
        const double qg = (1.0 - xi) * q[a] + xi * q[b];
        const double Sg = (1.0 - xi) * S[a] + xi * S[b];
        const double d2 = qg * qg + l2 * qy * qy + eps_ * eps_;
        const double d = std::sqrt(d2);
        const double mu = std::pow(d / p_.d0, m) / d;
        const double tdis = Sg * mu * qg;
        const double kdis = kd0 * mu * qy;
        res[a] += hw * (tdis * (1.0 - xi) - kdis / hc);
        res[b] += hw * (tdis * xi + kdis / hc);
        if (!jac) continue;
        const double t_q = Sg * mu * (1.0 + (m - 1.0) * qg * qg / d2);
        const double t_y = Sg * mu * (m - 1.0) * l2 * qg * qy / d2;
        const double k_q = kd0 * mu * (m - 1.0) * qg * qy / d2;
        const double k_y = kd0 * mu * (1.0 + (m - 1.0) * l2 * qy * qy / d2);
        // d/dq_a and d/dq_b of the flux pair
        const double ta = t_q * (1.0 - xi) - t_y / hc, tb = t_q * xi + t_y / hc;
        const double ka = k_q * (1.0 - xi) - k_y / hc, kb = k_q * xi + k_y / hc;
        jac->diag[a] += hw * ((1.0 - xi) * ta - ka / hc);
        jac->upper[a] += hw * ((1.0 - xi) * tb - kb / hc);
        jac->lower[b] += hw * (xi * ta + ka / hc);
        jac->diag[b] += hw * (xi * tb + kb / hc);
      }
    }
    res.front() = q.front();
    res.back() = q.back();
    if (jac) {
      jac->diag.front() = 1.0;
      jac->upper.front() = 0.0;
      jac->diag.back() = 1.0;
      jac->lower.back() = 0.0;
    }
  }

  // Dissipated power integral and its pointwise minimum over quadrature points.
  std::pair<double, double> dissipation_power(const std::vector<double>& q) const {
    const auto S = s_.S.values();
    const double l2 = p_.ell * p_.ell;
    const QuadratureRule& rule = default_cell_rule();
    double total = 0.0, least = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c + 1 < n_; ++c) {
      const double hc = y_[c + 1] - y_[c];
      const double qy = (q[c + 1] - q[c]) / hc;
      for (std::size_t k = 0; k < rule.points(); ++k) {
        const double xi = rule.abscissae[k];
        const double qg = (1.0 - xi) * q[c] + xi * q[c + 1];
        const double Sg = (1.0 - xi) * S[c] + xi * S[c + 1];
        const double d = std::sqrt(qg * qg + l2 * qy * qy + eps_ * eps_);
        const double mu = std::pow(d / p_.d0, p_.m_rate) / d;
        const double power = mu * (Sg * qg * qg + p_.S0 * l2 * qy * qy);
        total += hc * rule.weights[k] * power;
        least = std::min(least, power);
      }
    }
    return {total, least};
  }

  std::vector<double> nodal_flow_rate(const std::vector<double>& q) const {
    std::vector<double> d(n_);
    const double l2 = p_.ell * p_.ell;
    for (std::size_t i = 0; i < n_; ++i) {
      double slope = 0.0;
      int count = 0;
      if (i > 0) {
        slope += (q[i] - q[i - 1]) / (y_[i] - y_[i - 1]);
        ++count;
      }
      if (i + 1 < n_) {
        slope += (q[i + 1] - q[i]) / (y_[i + 1] - y_[i]);
        ++count;
      }
      slope /= count;
      d[i] = std::sqrt(q[i] * q[i] + l2 * slope * slope);
    }
    return d;
  }

private:
  const ViscoState& s_;
  double tau_, dt_;
  const PhysicalParams& p_;
  double eps_;
  std::size_t n_;
  std::vector<double> y_;
};

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

// Damped Newton with backtracking on the residual 2-norm. Returns false on failure.
bool newton(const StepProblem& prob, std::vector<double>& q, double tol, int max_iters,
            double& residual) {
  const std::size_t n = prob.size();
  std::vector<double> res(n), trial(n), trial_res(n), rhs(n);
  Tridiagonal jac(n);
  prob.evaluate(q, res, &jac);
  residual = max_abs(res);
  for (int it = 0; it < max_iters; ++it) {
    if (!std::isfinite(residual)) return false;
    if (residual <= tol) return true;
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -res[i];
    std::vector<double> step;
    try {
      step = jac.solve(rhs);
    } catch (const SolverError&) {
      return false;
    }
    const double r0 = norm2(res);
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = q[i] + alpha * step[i];
      prob.evaluate(trial, trial_res, nullptr);
      const double r1 = norm2(trial_res);
      if (std::isfinite(r1) && r1 <= (1.0 - 1e-4 * alpha) * r0) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) return false;
    q.swap(trial);
    prob.evaluate(q, res, &jac);
    residual = max_abs(res);
  }
  return residual <= tol;
}

}  // namespace

ViscoState visco_step(const ViscoState& state, double tau_next, double dt, const ViscoParams& p,
                      const ViscoOptions& opts) {
  p.validate();
  opts.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be finite and positive");
  if (!std::isfinite(tau_next)) throw ValidationError("tau must be finite");
  if (state.gamma.size() < 3 || !state.gamma.same_mesh(state.S))
    throw ValidationError("visco state fields must share a mesh with at least 2 cells");

  const StepProblem prob(state, tau_next, dt, p, opts);
  const double tol = opts.newton_tol * p.base.S0 * prob.min_width();
  std::vector<double> q(prob.size(), 0.0);
  if (state.gamma_rate.size() == q.size())
    std::copy(state.gamma_rate.values().begin(), state.gamma_rate.values().end(), q.begin());
  q.front() = q.back() = 0.0;
  double residual = 0.0;
  if (!newton(prob, q, tol, opts.max_newton_iters, residual)) {
    // a warm start of the wrong sign (load reversal) can stall; retry from rest
    std::fill(q.begin(), q.end(), 0.0);
    if (!newton(prob, q, tol, opts.max_newton_iters, residual))
      throw SolverError("viscoplastic Newton failed at t = " + std::to_string(state.t + dt) +
                            " (residual " + std::to_string(residual) + "); halve dt",
                        residual);
  }

  const MeshPtr& mesh = state.gamma.mesh_ptr();
  ViscoState next;
  next.t = state.t + dt;
  std::vector<double> g(state.gamma.values().begin(), state.gamma.values().end());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += dt * q[i];
  g.front() = g.back() = 0.0;
  next.gamma = Field(mesh, std::move(g));

  const std::vector<double> d = prob.nodal_flow_rate(q);
  std::vector<double> S(state.S.values().begin(), state.S.values().end());
  for (std::size_t i = 0; i < S.size(); ++i)
    S[i] = std::max(0.0, S[i] + dt * p.hardening(S[i]) * d[i]);
  next.S = Field(mesh, std::move(S));

  const auto [power, least] = prob.dissipation_power(q);
  next.dissipated = state.dissipated + dt * power;
  next.min_dissipation_power = least;
  next.gamma_rate = Field(mesh, std::move(q));
  return next;
}

std::vector<ViscoState> simulate_visco(const std::vector<LoadPoint>& load, const ViscoParams& p,
                                       MeshPtr mesh, const ViscoOptions& opts) {
  p.validate();
  opts.validate();
  if (load.empty()) throw ValidationError("load history is empty");
  for (std::size_t k = 0; k < load.size(); ++k) {
    if (!std::isfinite(load[k].t) || !std::isfinite(load[k].tau))
      throw ValidationError("load point " + std::to_string(k) + " is not finite");
    if (k > 0 && !(load[k].t > load[k - 1].t))
      throw ValidationError("load times must be strictly increasing (point " +
                            std::to_string(k) + ")");
  }

  std::vector<ViscoState> out;
  out.reserve(load.size());
  ViscoState state = visco_initial_state(load.front().t, p, mesh);
  out.push_back(state);
  for (std::size_t k = 1; k < load.size(); ++k) {
    const LoadPoint a = load[k - 1], b = load[k];
    const double span = b.t - a.t;
    const auto n_sub = static_cast<std::size_t>(std::ceil(span / opts.max_dt - 1e-9));
    double dt = span / static_cast<double>(std::max<std::size_t>(n_sub, 1));
    int halvings = 0;
    double t = a.t;
    while (t < b.t) {
      const bool last = t + dt >= b.t - 1e-12 * span;
      const double t_next = last ? b.t : t + dt;
      const double tau = last ? b.tau : a.tau + (b.tau - a.tau) * (t_next - a.t) / span;
      try {
        state = visco_step(state, tau, t_next - t, p, opts);
        state.t = t_next;
        t = t_next;
      } catch (const SolverError& e) {
        if (++halvings > opts.max_dt_halvings)
          throw SolverError(std::string(e.what()) + " after " +
                                std::to_string(opts.max_dt_halvings) + " dt halvings",
                            e.residual());
        dt *= 0.5;
      }
    }
    out.push_back(state);
  }
  return out;
}

Field recover_displacement(const ViscoState& state, double tau, const ViscoParams& p) {
  validate_base(p.base);
  if (!std::isfinite(tau)) throw ValidationError("tau must be finite");
  const Mesh& mesh = state.gamma.mesh();
  const auto r = mesh.nodes();
  const auto g = state.gamma.values();
  std::vector<double> u(mesh.size(), 0.0);
  const double elastic = tau / p.base.G;
  for (std::size_t i = 1; i < u.size(); ++i)
    u[i] = u[i - 1] + 0.5 * p.base.h * (r[i] - r[i - 1]) * (2.0 * elastic + g[i - 1] + g[i]);
  return Field(state.gamma.mesh_ptr(), std::move(u));
}

NondimParams rate_independent_params(const PhysicalParams& p) {
  p.validate();
  if (!(p.kappa > 0.0))
    throw ValidationError("rate-independent comparison needs kappa > 0");
  NondimParams np{p.ell / p.h, p.L / p.h / std::sqrt(p.kappa), p.kappa};
  np.validate();
  return np;
}

LimitStudy rate_independent_limit_study(const std::vector<double>& m_list, const ViscoParams& p,
                                        MeshPtr mesh, double tau_max, double t_end,
                                        std::size_t steps, const ViscoOptions& vopts,
                                        const SolverOptions& sopts) {
  if (p.hardening.kind != Hardening::Kind::zero)
    throw ValidationError("limit study requires zero hardening");
  if (m_list.empty()) throw ValidationError("m_list is empty");
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    if (!(m_list[k] > 0.0) || !std::isfinite(m_list[k]))
      throw ValidationError("m_list entries must be finite and positive");
    if (k > 0 && !(m_list[k] < m_list[k - 1]))
      throw ValidationError("m_list must be strictly decreasing");
  }
  if (!std::isfinite(tau_max)) throw ValidationError("tau_max must be finite");
  if (!(t_end > 0.0) || !std::isfinite(t_end))
    throw ValidationError("t_end must be finite and positive");
  if (steps < 1) throw ValidationError("steps must be >= 1");

  std::vector<LoadPoint> load(steps + 1);
  LoadProgram program;
  program.theta_steps.resize(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const double f = static_cast<double>(k) / static_cast<double>(steps);
    load[k] = {t_end * f, tau_max * f};
    program.theta_steps[k] = tau_max * f / p.base.S0;
  }
  ViscoOptions ramp_opts = vopts;
  ramp_opts.max_dt = t_end / static_cast<double>(steps) * (1.0 + 1e-12);

  auto reference = std::async(std::launch::async, [&] {
    return evolve(program, rate_independent_params(p.base), mesh, sopts).steps.back().gamma;
  });
  std::vector<std::future<std::vector<ViscoState>>> runs;
  for (double m : m_list) {
    ViscoParams pm = p;
    pm.base.m_rate = m;
    runs.push_back(std::async(std::launch::async, [pm, &load, mesh, ramp_opts] {
      return simulate_visco(load, pm, mesh, ramp_opts);
    }));
  }

  LimitStudy study;
  study.reference = reference.get();
  const auto ref = study.reference.values();
  for (std::size_t k = 0; k < m_list.size(); ++k) {
    const std::vector<ViscoState> states = runs[k].get();
    const auto g = states.back().gamma.values();
    double diff = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) diff = std::max(diff, std::abs(g[i] - ref[i]));
    study.entries.push_back({m_list[k], diff, steps});
  }
  study.decreasing = true;
  for (std::size_t k = 1; k < study.entries.size(); ++k)
    if (!(study.entries[k].discrepancy < study.entries[k - 1].discrepancy))
      study.decreasing = false;
  return study;
}

}  // namespace stripshear
