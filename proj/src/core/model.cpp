#include "model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace stripshear {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw ValidationError(std::string(name) + " must be finite and positive");
}

void require_nonnegative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw ValidationError(std::string(name) + " must be finite and nonnegative");
}

}  // namespace

void PhysicalParams::validate() const {
  require_positive(S0, "S0");
  require_nonnegative(kappa, "kappa");
  require_positive(L, "L");
  require_positive(ell, "ell");
  require_positive(h, "h");
  require_positive(G, "G");
  require_positive(d0, "d0");
  require_nonnegative(m_rate, "m_rate");
}

void NondimParams::validate() const {
  require_positive(lambda, "lambda");
  require_positive(Lambda, "Lambda");
  require_nonnegative(kappa, "kappa");
}

NondimParams nondimensionalize(const PhysicalParams& p) {
  p.validate();
  return NondimParams{p.ell / p.h, p.L / p.h, p.kappa};
}

Mesh Mesh::uniform(std::size_t n_cells) {
  if (n_cells < 2 || n_cells % 2 != 0)
    throw ValidationError("n_cells must be even and >= 2, got " + std::to_string(n_cells));
  std::vector<double> nodes(n_cells + 1);
  const double n = static_cast<double>(n_cells);
  for (std::size_t i = 0; i <= n_cells; ++i)
    nodes[i] = (2.0 * static_cast<double>(i) - n) / n;
  return Mesh(std::move(nodes), true);
}

Mesh Mesh::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw ValidationError("mesh needs at least two nodes");
  if (nodes.front() != -1.0 || nodes.back() != 1.0)
    throw ValidationError("mesh endpoints must be exactly -1 and +1");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i] < nodes[i + 1]) || !std::isfinite(nodes[i]))
      throw ValidationError("mesh nodes must be finite and strictly increasing");
  }
  return Mesh(std::move(nodes), false);
}

std::vector<double> Mesh::trapezoid_weights() const {
  std::vector<double> w(size(), 0.0);
  for (std::size_t c = 0; c < cells(); ++c) {
    const double half = 0.5 * width(c);
    w[c] += half;
    w[c + 1] += half;
  }
  return w;
}

MeshPtr make_mesh(std::size_t n_cells) {
  return std::make_shared<const Mesh>(Mesh::uniform(n_cells));
}

Field::Field(MeshPtr mesh) : mesh_(std::move(mesh)) {
  if (!mesh_) throw ValidationError("field requires a mesh");
  values_.assign(mesh_->size(), 0.0);
}

Field::Field(MeshPtr mesh, std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (!mesh_) throw ValidationError("field requires a mesh");
  if (values_.size() != mesh_->size())
    throw ValidationError("field has " + std::to_string(values_.size()) + " values for " +
                          std::to_string(mesh_->size()) + " nodes");
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }))
    throw ValidationError("field values must be finite");
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Field::mass() const {
  const auto& nodes = mesh_->nodes();
  double s = 0.0;
  for (std::size_t c = 0; c + 1 < values_.size(); ++c)
    s += 0.5 * (nodes[c + 1] - nodes[c]) * (values_[c] + values_[c + 1]);
  return s;
}

bool Field::same_mesh(const Field& other) const {
  return mesh_ == other.mesh_ || (mesh_ && other.mesh_ && *mesh_ == *other.mesh_);
}

Field Field::operator-(const Field& other) const {
  if (!same_mesh(other)) throw ValidationError("fields live on different meshes");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] - other.values_[i];
  return Field(mesh_, std::move(v));
}

Field Field::operator+(const Field& other) const {
  if (!same_mesh(other)) throw ValidationError("fields live on different meshes");
  std::vector<double> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values_[i] + other.values_[i];
  return Field(mesh_, std::move(v));
}

Field Field::scaled(double alpha) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= alpha;
  return Field(mesh_, std::move(v));
}

double local_flow_response(double theta, double kappa) {
  if (!std::isfinite(kappa) || kappa <= 0.0)
    throw DomainError("unbounded plastic flow past yield: local response needs kappa > 0");
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  return std::max(theta - 1.0, 0.0) / kappa;
}

double local_energy_balance_residual(std::span<const double> theta_grid, double kappa) {
  if (theta_grid.size() < 2) throw ValidationError("theta grid needs at least 2 points");
  if (theta_grid.front() != 0.0) throw ValidationError("theta grid must start at 0");
  double worst = 0.0;
  double g_prev = local_flow_response(theta_grid[0], kappa);
  for (std::size_t i = 0; i + 1 < theta_grid.size(); ++i) {
    const double dt = theta_grid[i + 1] - theta_grid[i];
    if (!(dt > 0.0)) throw ValidationError("theta grid must be strictly increasing");
    const double g_next = local_flow_response(theta_grid[i + 1], kappa);
    const double rate = (g_next - g_prev) / dt;
    const double energetic = 0.5 * kappa * (g_next * g_next - g_prev * g_prev) / dt;
    const double dissipative = std::abs(rate);
    const double power = theta_grid[i] * rate;
    worst = std::max(worst, std::abs(energetic + dissipative - power));
    g_prev = g_next;
  }
  return worst;
}

}  // namespace stripshear
