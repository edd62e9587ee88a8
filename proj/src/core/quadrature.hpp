#pragma once

#include <cstddef>
#include <vector>

namespace stripshear {

/// Per-cell rule on the reference cell [0, 1]; weights sum to 1 and are
/// scaled by the cell width at use.
struct QuadratureRule {
  std::vector<double> abscissae;
  std::vector<double> weights;

  std::size_t points() const noexcept { return abscissae.size(); }
};

/// n-point Gauss-Legendre rule mapped to [0, 1].
QuadratureRule gauss_rule(std::size_t n);

/// Default rule for square-root integrands on piecewise-linear data.
const QuadratureRule& default_cell_rule();

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
/// the Legendre recurrence and cached per n. Thread-safe.
const QuadratureRule& gauss_legendre(std::size_t n);

}  // namespace stripshear
