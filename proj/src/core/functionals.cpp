#include "functionals.hpp"

#include <cmath>

#include "error.hpp"

namespace stripshear {

namespace {

void check_lambda(double lambda) {
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw ValidationError("lambda must be finite and nonnegative");
}

template <class Integrand>
double integrate_cells(const Field& f, const QuadratureRule& q, Integrand&& integrand) {
  const auto nodes = f.mesh().nodes();
  const auto v = f.values();
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < v.size(); ++c) {
    const double width = nodes[c + 1] - nodes[c];
    const double slope = (v[c + 1] - v[c]) / width;
    double cell = 0.0;
    for (std::size_t k = 0; k < q.points(); ++k) {
      const double x = q.abscissae[k];
      const double u = (1.0 - x) * v[c] + x * v[c + 1];
      cell += q.weights[k] * integrand(u, slope);
    }
    total += width * cell;
  }
  return total;
}

}  // namespace

double plastic_energy(const Field& gamma, const NondimParams& p) {
  const auto nodes = gamma.mesh().nodes();
  const auto v = gamma.values();
  const double Lambda2 = p.Lambda * p.Lambda;
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < v.size(); ++c) {
    const double width = nodes[c + 1] - nodes[c];
    const double a = v[c], b = v[c + 1];
    const double square = width * (a * a + a * b + b * b) / 3.0;
    const double slope = (b - a) / width;
    total += square + Lambda2 * slope * slope * width;
  }
  return 0.5 * p.kappa * total;
}

double dissipation(const Field& gamma, double lambda, const QuadratureRule& q) {
  check_lambda(lambda);
  const double l2 = lambda * lambda;
  return integrate_cells(gamma, q,
                         [l2](double u, double w) { return std::sqrt(u * u + l2 * w * w); });
}

double relaxed_dissipation(const RelaxedField& phi, double lambda, const QuadratureRule& q) {
  const auto v = phi.values();
  return dissipation(phi.field(), lambda, q) + lambda * (std::abs(v.front()) + std::abs(v.back()));
}

double total_energy(double theta, const Field& gamma, const NondimParams& p) {
  return plastic_energy(gamma, p) - theta * gamma.mass();
}

double dissipation_distance(const Field& g1, const Field& g2, double lambda,
                            const QuadratureRule& q) {
  return dissipation(g1 - g2, lambda, q);
}

double l1_norm(const Field& gamma, const QuadratureRule& q) {
  return integrate_cells(gamma, q, [](double u, double) { return std::abs(u); });
}

double total_variation(const Field& gamma) {
  const auto v = gamma.values();
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) tv += std::abs(v[i + 1] - v[i]);
  return tv;
}

}  // namespace stripshear
