#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "error.hpp"

namespace stripshear {

/// Tridiagonal system: lower[i] couples row i to i-1 (lower[0] unused),
/// upper[i] couples row i to i+1 (upper[n-1] unused).
struct Tridiagonal {
  std::vector<double> lower, diag, upper;

  explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }

  void fill_zero() {
    std::fill(lower.begin(), lower.end(), 0.0);
    std::fill(diag.begin(), diag.end(), 0.0);
    std::fill(upper.begin(), upper.end(), 0.0);
  }

  /// Thomas elimination without pivoting. Throws SolverError on a vanishing
  /// pivot; callers only pass matrices that are positive definite or
  /// diagonally dominant.
  std::vector<double> solve(const std::vector<double>& rhs) const {
    const std::size_t n = size();
    std::vector<double> c(n), d(n);
    double pivot = diag[0];
    if (!(std::abs(pivot) > 0.0)) throw SolverError("singular tridiagonal pivot", 0.0);
    c[0] = n > 1 ? upper[0] / pivot : 0.0;
    d[0] = rhs[0] / pivot;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = diag[i] - lower[i] * c[i - 1];
      if (!(std::abs(pivot) > 0.0) || !std::isfinite(pivot))
        throw SolverError("singular tridiagonal pivot", 0.0);
      c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
      d[i] = (rhs[i] - lower[i] * d[i - 1]) / pivot;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
  }
};

}  // namespace stripshear
