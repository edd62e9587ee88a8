#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "functionals.hpp"
#include "incremental.hpp"
#include "model.hpp"

namespace stripshear {

enum class YieldMethod { formula, quadrature, variational, simulation };

std::string_view to_string(YieldMethod m);

struct YieldResult {
  double theta_Y{0.0};
  double lambda{0.0};
  YieldMethod method{YieldMethod::formula};
  // diagnostics
  double residual{0.0};        ///< solver optimality residual (variational) or 0
  double multiplier{0.0};      ///< mass-constraint multiplier (variational)
  std::size_t mesh_cells{0};
  double load_step{0.0};       ///< step-size uncertainty (simulation)
  int iterations{0};
  RelaxedField minimizer;      ///< discrete minimizer, unit mass (variational)
};

/// Closed-form relation between the renormalized yield stress and the
/// renormalized dissipative length:
///   lambda = 2 sqrt(t^2 - 1) / (pi (t - sqrt(t^2 - 1)) + 2 t atan(1 / sqrt(t^2 - 1))).
/// Throws DomainError for theta_Y <= 1.
double lambda_of_theta(double theta_Y);

/// Same relation parametrized by the excess u = theta_Y - 1 > 0, which keeps
/// full relative precision when theta_Y is close to 1.
double lambda_of_excess(double u);

/// Inverse of lambda_of_theta, bracketed on theta_Y in (1, 1 + lambda].
double theta_of_lambda(double lambda);

/// Independent quadrature route to lambda(theta_Y), via
/// 1/lambda = int_0^1 dz / (theta_Y - sqrt(1 - z^2)) evaluated after z = sin(s)
/// with an n_quad-point Gauss-Legendre rule. Returns lambda.
double yield_integral(double theta_Y, std::size_t n_quad);

/// yield_integral with n_quad doubled from `n_start` until successive values
/// agree to `rel_tol` (relative).
double yield_integral_converged(double theta_Y, std::size_t n_start = 256,
                                double rel_tol = 1e-13);

struct AsymptoticTheta {
  double small_regime;  ///< 1 + pi^2 lambda^2 / 2
  double large_regime;  ///< lambda + pi / 4
};

AsymptoticTheta asymptotic_theta(double lambda);

/// m(theta) = min over zero-boundary nodal fields of E(theta, phi) + Psi(phi).
/// Nonpositive; zero up to the yield stress of the mesh.
double stability_indicator(double theta, const NondimParams& p, MeshPtr mesh,
                           const SolverOptions& opts);

enum class Sign { negative, nonnegative };

/// Sign of the reduced indicator inf [Psi(phi) - theta * mass(phi)], which is
/// either 0 or -infinity. Negative exactly when theta exceeds the discrete
/// variational yield stress on `mesh`.
Sign reduced_stability_indicator_sign(double theta, double lambda, MeshPtr mesh,
                                      const SolverOptions& opts = {});

/// Minimizes the relaxed dissipation over nodal fields with free boundary
/// values subject to unit trapezoidal mass.
YieldResult yield_variational(double lambda, MeshPtr mesh, const SolverOptions& opts = {});

/// Yield stress observed in an incremental simulation.
YieldResult yield_simulation(double theta_max, std::size_t steps, const NondimParams& p,
                             MeshPtr mesh, const SolverOptions& opts = {});

struct ProfileResult {
  double lambda{0.0};
  double theta_Y{0.0};
  std::vector<double> r;     ///< samples on [0, 1]; the last one is r = 1
  std::vector<double> zeta;  ///< zeta(r), same samples; zeta(1-) = 1
  RelaxedField phi;          ///< even extension on a graded mesh, unit mass
  double jump_ratio{0.0};    ///< phi(1-) / phi(0)
  double mass{0.0};          ///< trapezoidal mass of phi
  double relaxed_dissipation{0.0};
  double endpoint_error{0.0};  ///< |r(zeta -> 1) - 1| before snapping
};

/// Reconstructs the relaxed minimizer from the first-order equation
/// lambda dzeta/dr = theta_Y - sqrt(1 - zeta^2), zeta(0) = 0, marched in s with
/// zeta = sin(s) by classical RK4. Uses `n_samples` output intervals in s.
ProfileResult minimizer_profile(double lambda, std::size_t n_samples = 20000);

}  // namespace stripshear
