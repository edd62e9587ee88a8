#include "yield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "error.hpp"
#include "quadrature.hpp"
#include "smoothing.hpp"

namespace stripshear {

namespace {
constexpr double pi = std::numbers::pi;
}

std::string_view to_string(YieldMethod m) {
  switch (m) {
    case YieldMethod::formula: return "formula";
    case YieldMethod::quadrature: return "quadrature";
    case YieldMethod::variational: return "variational";
    case YieldMethod::simulation: return "simulation";
  }
  return "unknown";
}

double lambda_of_excess(double u) {
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("theta_Y - 1 must be nonnegative");
  const double theta = 1.0 + u;
  const double s = std::sqrt(u * (u + 2.0));
  // theta - s == 1 / (theta + s) without cancellation for large theta
  return 2.0 * s / (pi / (theta + s) + 2.0 * theta * std::atan2(1.0, s));
}

double lambda_of_theta(double theta_Y) {
  if (!(theta_Y > 1.0) || !std::isfinite(theta_Y))
    throw DomainError("lambda_of_theta requires theta_Y > 1, got " + std::to_string(theta_Y));
  return lambda_of_excess(theta_Y - 1.0);
}

double theta_of_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be finite and positive");
  auto f = [lambda](double u) { return lambda_of_excess(u) - lambda; };
  const double lo = 0.0, hi = lambda;  // theta_Y - 1 < lambda
  const double flo = f(lo), fhi = f(hi);
  if (fhi <= 0.0) throw SolverError("upper bracket 1 + lambda does not enclose the root", fhi);
  std::uintmax_t max_iter = 300;
  const auto tol = [](double a, double b) {
    return std::abs(b - a) <= 2.0 * std::numeric_limits<double>::epsilon() *
                                  std::max(std::min(std::abs(a), std::abs(b)), 1e-300);
  };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, tol, max_iter);
  const double u = std::abs(f(a)) <= std::abs(f(b)) ? a : b;
  return 1.0 + u;
}

double yield_integral(double theta_Y, std::size_t n_quad) {
  if (!(theta_Y > 1.0) || !std::isfinite(theta_Y))
    throw DomainError("yield_integral requires theta_Y > 1, got " + std::to_string(theta_Y));
  const QuadratureRule& rule = gauss_legendre(n_quad);
  const double u = theta_Y - 1.0;
  const double half = 0.25 * pi;  // s in [0, pi/2]
  double integral = 0.0;
  for (std::size_t k = 0; k < rule.points(); ++k) {
    const double s = half * (rule.abscissae[k] + 1.0);
    const double sh = std::sin(0.5 * s);
    // theta - cos(s) = u + 2 sin^2(s/2)
    integral += rule.weights[k] * std::cos(s) / (u + 2.0 * sh * sh);
  }
  return 1.0 / (half * integral);
}

double yield_integral_converged(double theta_Y, std::size_t n_start, double rel_tol) {
  std::size_t n = std::max<std::size_t>(n_start, 2);
  double prev = yield_integral(theta_Y, n);
  for (int doubling = 0; doubling < 6; ++doubling) {
    n *= 2;
    const double next = yield_integral(theta_Y, n);
    if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
    prev = next;
  }
  return prev;
}

AsymptoticTheta asymptotic_theta(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be finite and positive");
  return {1.0 + 0.5 * pi * pi * lambda * lambda, lambda + 0.25 * pi};
}

double stability_indicator(double theta, const NondimParams& p, MeshPtr mesh,
                           const SolverOptions& opts) {
  const Field zero(std::move(mesh));
  return increment_solve_detailed(zero, theta, p, opts).objective_change;
}

Sign reduced_stability_indicator_sign(double theta, double lambda, MeshPtr mesh,
                                      const SolverOptions& opts) {
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  if (theta <= 1.0) return Sign::nonnegative;  // Psi(phi) >= L1 norm >= mass
  const YieldResult y = yield_variational(lambda, std::move(mesh), opts);
  return theta > y.theta_Y ? Sign::negative : Sign::nonnegative;
}

namespace {

// Relaxed dissipation with smoothed boundary penalty, over all nodes.
double relaxed_objective(std::span<const double> nodes, const std::vector<double>& phi,
                         double lambda, double eps, std::span<double> grad, Tridiagonal* hess) {
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  if (hess) hess->fill_zero();
  double value =
      detail::smoothed_dissipation(nodes, phi, lambda, eps, default_cell_rule(), grad, hess);
  for (std::size_t i : {std::size_t{0}, phi.size() - 1}) {
    const auto a = detail::smooth_abs(phi[i], eps);
    value += lambda * a.value;
    if (!grad.empty()) grad[i] += lambda * a.first;
    if (hess) hess->diag[i] += lambda * a.second;
  }
  return value;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

YieldResult yield_variational(double lambda, MeshPtr mesh, const SolverOptions& opts) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be finite and positive");
  if (!mesh) throw ValidationError("mesh required");
  opts.validate();
  const auto nodes = mesh->nodes();
  const std::size_t n = mesh->size();
  const std::vector<double> t = mesh->trapezoid_weights();
  const double tt = dot(t, t);
  const double t_max = *std::max_element(t.begin(), t.end());
  const double tol_scale = std::max(1.0, lambda);

  // Unit-mass constant start; its relaxed dissipation is exactly 1 + lambda.
  std::vector<double> phi(n, 0.5);

  std::vector<double> grad(n), trial(n), neg_grad(n);
  Tridiagonal hess(n);
  YieldResult result;
  result.lambda = lambda;
  result.method = YieldMethod::variational;
  result.mesh_cells = mesh->cells();

  double residual = 0.0;
  double mu = 0.0;
  for (std::size_t level = 0; level < opts.epsilon_schedule.size(); ++level) {
    const double eps = opts.epsilon_schedule[level];
    const bool last = level + 1 == opts.epsilon_schedule.size();
    const double tol =
        tol_scale * (last ? opts.newton_tol : std::max(opts.newton_tol, 1e-3 * eps));
    double f = relaxed_objective(nodes, phi, lambda, eps, grad, &hess);
    auto stationarity = [&] {
      mu = dot(t, grad) / tt;
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(grad[i] - mu * t[i]));
      return r;
    };
    residual = stationarity();
    for (int it = 0; it < opts.max_newton_iters && residual > tol; ++it) {
      ++result.iterations;
      for (std::size_t i = 0; i < n; ++i) neg_grad[i] = -grad[i];
      // Psi is 1-homogeneous, so phi itself is a near-null vector of the
      // smoothed Hessian and the bordered solve loses all accuracy. A tiny
      // mass-weighted shift removes it; the step stays in the constraint plane.
      double diag_mean = 0.0;
      for (double v : hess.diag) diag_mean += v;
      diag_mean /= static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) hess.diag[i] += 1e-8 * diag_mean * t[i] / t_max;
      const std::vector<double> a = hess.solve(neg_grad);
      const std::vector<double> b = hess.solve(t);
      const double coef = dot(t, a) / dot(t, b);
      std::vector<double> step(n);
      for (std::size_t i = 0; i < n; ++i) step[i] = a[i] - coef * b[i];
      const double slope = dot(grad, step);
      if (!(slope < 0.0)) break;
      double alpha = 1.0;
      bool accepted = false;
      for (int ls = 0; ls < 60; ++ls) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = phi[i] + alpha * step[i];
        const double ft = relaxed_objective(nodes, trial, lambda, eps, {}, nullptr);
        if (ft <= f + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) break;
      phi.swap(trial);
      f = relaxed_objective(nodes, phi, lambda, eps, grad, &hess);
      residual = stationarity();
    }
    // a stalled final level is accepted at the rounding floor of the gradient
    if (last && residual > tol && residual > 1e-8 * tol_scale)
      throw SolverError("variational yield solve did not converge (stationarity residual " +
                            std::to_string(residual) + ")",
                        residual);
  }

  double mass = dot(t, phi);
  for (double& v : phi) v /= mass;
  result.minimizer = RelaxedField(Field(mesh, phi));
  result.theta_Y = relaxed_dissipation(result.minimizer, lambda);
  result.residual = residual;
  result.multiplier = mu;
  return result;
}

YieldResult yield_simulation(double theta_max, std::size_t steps, const NondimParams& p,
                             MeshPtr mesh, const SolverOptions& opts) {
  const Trajectory traj = evolve(LoadProgram::uniform(theta_max, steps), p, mesh, opts);
  const YieldDetection det = detect_yield(traj, opts);
  YieldResult result;
  result.theta_Y = det.theta;
  result.lambda = p.lambda;
  result.method = YieldMethod::simulation;
  result.mesh_cells = mesh->cells();
  result.load_step = det.uncertainty;
  if (!det.yielded) result.residual = 1.0;  // flags "no yield observed"
  return result;
}

ProfileResult minimizer_profile(double lambda, std::size_t n_samples) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must be finite and positive");
  if (n_samples < 2) throw ValidationError("n_samples must be >= 2");
  ProfileResult out;
  out.lambda = lambda;
  out.theta_Y = theta_of_lambda(lambda);
  const double u = out.theta_Y - 1.0;

  // In s (zeta = sin s):  dr/ds = lambda cos s / (theta - cos s),
  //                       d ln(phi)/ds = -sin s / (theta - cos s),
  //                       dM/ds = phi dr/ds  (half mass, unnormalized).
  // The right-hand sides vary on the scale acosh(theta), the distance of the
  // nearest complex pole from the real s axis.
  const double s_end = 0.5 * pi;
  const double scale = std::acosh(out.theta_Y);
  const double h_sample = s_end / static_cast<double>(n_samples);
  const std::size_t sub =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(h_sample / (0.01 * scale))));
  const double h = h_sample / static_cast<double>(sub);

  auto gap = [u](double s) {
    const double sh = std::sin(0.5 * s);
    return u + 2.0 * sh * sh;
  };
  struct State {
    double r, log_phi, half_mass;
  };
  auto rhs = [&](double s, const State& y) {
    const double g = gap(s);
    const double dr = lambda * std::cos(s) / g;
    return State{dr, -std::sin(s) / g, std::exp(y.log_phi) * dr};
  };
  auto axpy = [](const State& y, double a, const State& k) {
    return State{y.r + a * k.r, y.log_phi + a * k.log_phi, y.half_mass + a * k.half_mass};
  };

  std::vector<double> r_half(n_samples + 1), logphi(n_samples + 1);
  State y{0.0, 0.0, 0.0};
  r_half[0] = 0.0;
  logphi[0] = 0.0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (std::size_t j = 0; j < sub; ++j) {
      const double s = h * static_cast<double>(i * sub + j);
      const State k1 = rhs(s, y);
      const State k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
      const State k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
      const State k4 = rhs(s + h, axpy(y, h, k3));
      y.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
      y.log_phi += h / 6.0 * (k1.log_phi + 2.0 * k2.log_phi + 2.0 * k3.log_phi + k4.log_phi);
      y.half_mass +=
          h / 6.0 * (k1.half_mass + 2.0 * k2.half_mass + 2.0 * k3.half_mass + k4.half_mass);
    }
    r_half[i + 1] = y.r;
    logphi[i + 1] = y.log_phi;
  }
  out.endpoint_error = std::abs(y.r - 1.0);
  if (!(out.endpoint_error <= 1e-9))
    throw SolverError("profile integration inconsistent with formula: zeta reaches 1 at r = " +
                          std::to_string(y.r),
                      out.endpoint_error);
  r_half[n_samples] = 1.0;

  out.r = r_half;
  out.zeta.resize(n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i)
    out.zeta[i] = std::sin(s_end * static_cast<double>(i) / static_cast<double>(n_samples));
  out.zeta[0] = 0.0;
  out.zeta[n_samples] = 1.0;
  out.jump_ratio = std::exp(logphi[n_samples]);

  const double norm = 1.0 / (2.0 * y.half_mass);
  std::vector<double> nodes(2 * n_samples + 1), values(2 * n_samples + 1);
  for (std::size_t i = 0; i <= n_samples; ++i) {
    const double v = norm * std::exp(logphi[i]);
    nodes[n_samples + i] = r_half[i];
    nodes[n_samples - i] = -r_half[i];
    values[n_samples + i] = v;
    values[n_samples - i] = v;
  }
  nodes[n_samples] = 0.0;
  auto mesh = std::make_shared<const Mesh>(Mesh::from_nodes(std::move(nodes)));
  out.phi = RelaxedField(Field(mesh, std::move(values)));
  out.mass = out.phi.mass();
  out.relaxed_dissipation = relaxed_dissipation(out.phi, lambda);
  return out;
}

}  // namespace stripshear
