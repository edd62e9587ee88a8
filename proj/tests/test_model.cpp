#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/error.hpp"
#include "core/model.hpp"

using namespace stripshear;

namespace {
std::vector<double> uniform_grid(double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = hi * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}
}  // namespace

TEST_CASE("nondimensionalize examples") {
  PhysicalParams p;
  auto n = nondimensionalize(p);
  CHECK(n.lambda == 1.0);
  CHECK(n.Lambda == 1.0);

  p.ell = 0.5, p.h = 2.0, p.L = 1.0;
  n = nondimensionalize(p);
  CHECK(n.lambda == 0.25);
  CHECK(n.Lambda == 0.5);

  p.ell = 3.0, p.h = 1.0, p.L = 0.1;
  n = nondimensionalize(p);
  CHECK(n.lambda == 3.0);
  CHECK(n.Lambda == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(n.kappa == p.kappa);
}

TEST_CASE("nondimensionalize rejects bad lengths and is scale invariant") {
  PhysicalParams p;
  p.h = 0.0;
  CHECK_THROWS_AS(nondimensionalize(p), ValidationError);
  p.h = std::nan("");
  CHECK_THROWS_AS(nondimensionalize(p), ValidationError);
  p.h = -1.0;
  CHECK_THROWS_AS(nondimensionalize(p), ValidationError);

  PhysicalParams a{1.0, 0.3, 0.7, 1.3, 2.1};
  PhysicalParams b = a;
  b.L *= 4.0, b.ell *= 4.0, b.h *= 4.0;
  const auto na = nondimensionalize(a), nb = nondimensionalize(b);
  CHECK(na.lambda == doctest::Approx(nb.lambda).epsilon(1e-15));
  CHECK(na.Lambda == doctest::Approx(nb.Lambda).epsilon(1e-15));
}

TEST_CASE("make_mesh examples and preconditions") {
  const auto m2 = make_mesh(2);
  REQUIRE(m2->size() == 3);
  CHECK(m2->node(0) == -1.0);
  CHECK(m2->node(1) == 0.0);
  CHECK(m2->node(2) == 1.0);

  const auto m4 = make_mesh(4);
  const std::vector<double> expect{-1.0, -0.5, 0.0, 0.5, 1.0};
  CHECK(std::vector<double>(m4->nodes().begin(), m4->nodes().end()) == expect);
  CHECK(m4->is_uniform());

  CHECK_THROWS_AS(make_mesh(3), ValidationError);
  CHECK_THROWS_AS(make_mesh(0), ValidationError);
  CHECK_THROWS_AS(make_mesh(1), ValidationError);

  const auto m = make_mesh(1000);
  for (std::size_t c = 0; c < m->cells(); ++c) CHECK(m->width(c) == doctest::Approx(0.002).epsilon(1e-12));
  CHECK(m->node(500) == 0.0);
}

TEST_CASE("graded meshes must span [-1, 1] strictly increasing") {
  CHECK_NOTHROW(Mesh::from_nodes({-1.0, -0.2, 0.5, 1.0}));
  CHECK_THROWS_AS(Mesh::from_nodes({-1.0, 0.5, 0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(Mesh::from_nodes({-0.9, 1.0}), ValidationError);
  CHECK_THROWS_AS(Mesh::from_nodes({-1.0}), ValidationError);
}

TEST_CASE("field invariants") {
  const auto mesh = make_mesh(4);
  CHECK_THROWS_AS(Field(mesh, {0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(Field(mesh, {0.0, 1.0, std::nan(""), 0.0, 0.0}), ValidationError);
  const Field hat(mesh, {0.0, 0.5, 1.0, 0.5, 0.0});
  CHECK(hat.mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hat.max_abs() == 1.0);
  CHECK(hat.has_zero_boundary());
  CHECK_THROWS_AS(hat - Field(make_mesh(2)), ValidationError);
  CHECK((hat - hat).max_abs() == 0.0);
  CHECK(hat.same_mesh(Field(make_mesh(4))));
}

TEST_CASE("local_flow_response examples") {
  CHECK(local_flow_response(0.5, 1.0) == 0.0);
  CHECK(local_flow_response(1.0, 7.0) == 0.0);
  CHECK(local_flow_response(2.0, 1.0) == 1.0);
  try {
    (void)local_flow_response(2.0, 0.0);
    FAIL("kappa = 0 accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("unbounded plastic flow past yield") != std::string::npos);
  }
}

TEST_CASE("local_flow_response monotonicity and yield") {
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double theta = 0.01 * i;
    const double g = local_flow_response(theta, 0.8);
    CHECK(g >= prev);
    CHECK((g == 0.0) == (theta <= 1.0));
    prev = g;
  }
  for (double theta : {1.1, 2.0, 5.0})
    CHECK(local_flow_response(theta, 2.0) < local_flow_response(theta, 1.0));
}

TEST_CASE("local energy balance residual") {
  CHECK(local_energy_balance_residual(uniform_grid(0.9, 50), 1.0) == 0.0);
  const double r4 = local_energy_balance_residual(uniform_grid(2.0, 10000), 1.0);
  CHECK(r4 <= 1e-3);
  const double r5 = local_energy_balance_residual(uniform_grid(2.0, 100000), 1.0);
  CHECK(r4 / r5 == doctest::Approx(10.0).epsilon(0.05));
  CHECK_THROWS_AS(local_energy_balance_residual(std::vector<double>{0.0}, 1.0), ValidationError);
  CHECK_THROWS_AS(local_energy_balance_residual(std::vector<double>{0.0, 0.5, 0.4}, 1.0),
                  ValidationError);
  CHECK_THROWS_AS(local_energy_balance_residual(std::vector<double>{0.1, 0.5}, 1.0),
                  ValidationError);
}
