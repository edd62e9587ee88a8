#pragma once

#include <cmath>
#include <span>

#include "quadrature.hpp"
#include "tridiagonal.hpp"

namespace stripshear::detail {

/// Smoothed dissipation sum over cells of
///   h * sum_q w_q (sqrt(u^2 + lambda^2 w^2 + eps^2) - eps)
/// for the piecewise-linear profile `v` on `nodes`. Accumulates the gradient
/// and the tridiagonal Hessian (full nodal indexing) when requested; with
/// eps = 0 only the value is meaningful.
inline double smoothed_dissipation(std::span<const double> nodes, std::span<const double> v,
                                   double lambda, double eps, const QuadratureRule& q,
                                   std::span<double> grad, Tridiagonal* hess) {
  const double l2 = lambda * lambda;
  const double e2 = eps * eps;
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < v.size(); ++c) {
    const double h = nodes[c + 1] - nodes[c];
    const double w = (v[c + 1] - v[c]) / h;
    for (std::size_t k = 0; k < q.points(); ++k) {
      const double xi = q.abscissae[k];
      const double hw = h * q.weights[k];
      const double u = (1.0 - xi) * v[c] + xi * v[c + 1];
      const double f = std::sqrt(u * u + l2 * w * w + e2);
      total += hw * (f - eps);
      if (!grad.empty() && f > 0.0) {
        const double fu = u / f;
        const double fw = l2 * w / f;
        grad[c] += hw * (fu * (1.0 - xi) - fw / h);
        grad[c + 1] += hw * (fu * xi + fw / h);
        if (hess) {
          const double f3 = f * f * f;
          const double fuu = (l2 * w * w + e2) / f3;
          const double fww = l2 * (u * u + e2) / f3;
          const double fuw = -l2 * u * w / f3;
          hess->diag[c] += hw * (fuu * (1.0 - xi) * (1.0 - xi) - 2.0 * fuw * (1.0 - xi) / h +
                                 fww / (h * h));
          hess->diag[c + 1] += hw * (fuu * xi * xi + 2.0 * fuw * xi / h + fww / (h * h));
          const double off = hw * (fuu * xi * (1.0 - xi) + fuw * (1.0 - 2.0 * xi) / h -
                                   fww / (h * h));
          hess->upper[c] += off;
          hess->lower[c + 1] += off;
        }
      }
    }
  }
  return total;
}

/// Smoothed absolute value sqrt(x^2 + eps^2) - eps with derivatives.
struct SmoothAbs {
  double value, first, second;
};

inline SmoothAbs smooth_abs(double x, double eps) {
  const double f = std::sqrt(x * x + eps * eps);
  if (f == 0.0) return {0.0, 0.0, 0.0};
  return {f - eps, x / f, eps * eps / (f * f * f)};
}

}  // namespace stripshear::detail
