#pragma once

#include <span>

#include "model.hpp"
#include "quadrature.hpp"

namespace stripshear {

/// Profile whose boundary nodes carry the one-sided traces phi(-1+), phi(1-);
/// these may be nonzero and are charged by the relaxed dissipation.
class RelaxedField {
public:
  RelaxedField() = default;
  explicit RelaxedField(Field f) : field_(std::move(f)) {}

  const Field& field() const noexcept { return field_; }
  const Mesh& mesh() const { return field_.mesh(); }
  std::span<const double> values() const noexcept { return field_.values(); }
  double mass() const { return field_.mass(); }

private:
  Field field_;
};

/// E(gamma) = (kappa/2) * integral of (gamma^2 + Lambda^2 gamma_r^2), exact
/// for the piecewise-linear interpolant.
double plastic_energy(const Field& gamma, const NondimParams& p);

/// Psi(gamma) = integral of sqrt(gamma^2 + lambda^2 gamma_r^2), by the given
/// per-cell rule.
double dissipation(const Field& gamma, double lambda,
                   const QuadratureRule& q = default_cell_rule());

/// Psi plus the boundary-jump penalty lambda (|phi(-1)| + |phi(+1)|).
double relaxed_dissipation(const RelaxedField& phi, double lambda,
                           const QuadratureRule& q = default_cell_rule());

/// Energy E(gamma) - theta * mass(gamma).
double total_energy(double theta, const Field& gamma, const NondimParams& p);

/// d(g1, g2) = Psi(g1 - g2). Throws on mesh mismatch.
double dissipation_distance(const Field& g1, const Field& g2, double lambda,
                            const QuadratureRule& q = default_cell_rule());

/// Same-quadrature L1 norm and total variation, the two one-sided bounds of Psi.
double l1_norm(const Field& gamma, const QuadratureRule& q = default_cell_rule());
double total_variation(const Field& gamma);

}  // namespace stripshear
