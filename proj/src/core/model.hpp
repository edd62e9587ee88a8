#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace stripshear {

/// Material and geometry data in physical units.
struct PhysicalParams {
  double S0{1.0};      ///< coarse-grain yield strength [stress]
  double kappa{1.0};   ///< kinematic-hardening coefficient
  double L{1.0};       ///< energetic length
  double ell{1.0};     ///< dissipative length
  double h{1.0};       ///< strip half-height
  double G{100.0};     ///< shear modulus [stress]
  double d0{1.0};      ///< reference flow rate [1/time]
  double m_rate{0.0};  ///< rate-sensitivity exponent

  void validate() const;
};

/// Renormalized parameters; every solver works in these variables.
struct NondimParams {
  double lambda{1.0};  ///< ell / h
  double Lambda{1.0};  ///< L / h
  double kappa{1.0};

  void validate() const;
};

NondimParams nondimensionalize(const PhysicalParams& p);

/// Grid on the reference interval [-1, 1]. Nodes are strictly increasing and
/// the endpoints are exactly -1 and +1. Meshes built by make_mesh are uniform
/// with an even cell count; from_nodes accepts a graded node set (used for
/// the reconstructed minimizer profile).
class Mesh {
public:
  static Mesh uniform(std::size_t n_cells);
  static Mesh from_nodes(std::vector<double> nodes);

  std::size_t cells() const noexcept { return nodes_.size() - 1; }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::span<const double> nodes() const noexcept { return nodes_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double width(std::size_t cell) const { return nodes_[cell + 1] - nodes_[cell]; }
  bool is_uniform() const noexcept { return uniform_; }

  /// Trapezoidal weights: integral of a piecewise-linear field is dot(w, v).
  std::vector<double> trapezoid_weights() const;

  friend bool operator==(const Mesh& a, const Mesh& b) { return a.nodes_ == b.nodes_; }

private:
  Mesh(std::vector<double> nodes, bool uniform) : nodes_(std::move(nodes)), uniform_(uniform) {}

  std::vector<double> nodes_;
  bool uniform_{false};
};

using MeshPtr = std::shared_ptr<const Mesh>;

/// Uniform mesh with an even number of cells >= 2, so that r = 0 is a node.
MeshPtr make_mesh(std::size_t n_cells);

/// Nodal values of a piecewise-linear profile on a mesh.
class Field {
public:
  Field() = default;
  explicit Field(MeshPtr mesh);  // zero field
  Field(MeshPtr mesh, std::vector<double> values);

  const Mesh& mesh() const { return *mesh_; }
  const MeshPtr& mesh_ptr() const noexcept { return mesh_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

  double max_abs() const;
  /// Trapezoidal integral (exact for the piecewise-linear interpolant).
  double mass() const;
  bool has_zero_boundary() const { return values_.front() == 0.0 && values_.back() == 0.0; }
  bool same_mesh(const Field& other) const;

  Field operator-(const Field& other) const;
  Field operator+(const Field& other) const;
  Field scaled(double alpha) const;

private:
  MeshPtr mesh_;
  std::vector<double> values_;
};

/// Closed-form response of the local flow rule from the virgin state,
/// gamma = (theta - 1)_+ / kappa. Throws for kappa <= 0 (unbounded flow).
double local_flow_response(double theta, double kappa);

/// Max over grid intervals of the discrepancy between the two sides of the
/// local energy balance (kappa/2) d(gamma^2)/dtheta + |dgamma/dtheta| =
/// theta dgamma/dtheta, evaluated with forward differences along the closed
/// form. First order in the grid spacing.
double local_energy_balance_residual(std::span<const double> theta_grid, double kappa);

}  // namespace stripshear
