#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/functionals.hpp"
#include "core/incremental.hpp"
#include "core/verification.hpp"
#include "core/yield.hpp"

using namespace stripshear;

namespace {
const NondimParams kUnit{1.0, 1.0, 1.0};
}

TEST_CASE("increment below yield returns the zero field") {
  const MeshPtr mesh = make_mesh(64);
  const double theta_Y = theta_of_lambda(kUnit.lambda);
  for (double theta : {0.0, 0.5, 1.0, 0.95 * theta_Y}) {
    const IncrementResult r = increment_solve_detailed(Field(mesh), theta, kUnit, SolverOptions{});
    CHECK(r.gamma.max_abs() <= 1e-8);
  }
}

TEST_CASE("increment solution is a fixed point") {
  const MeshPtr mesh = make_mesh(32);
  const SolverOptions opts;
  const Field g1 = increment_solve(Field(mesh), 3.0, kUnit, opts);
  CHECK(g1.max_abs() > 0.1);
  const Field g2 = increment_solve(g1, 3.0, kUnit, opts);
  CHECK((g2 - g1).max_abs() <= 1e-6);
}

TEST_CASE("increment matches brute-force search on four cells") {
  const Field g = increment_solve(Field(make_mesh(4)), 3.0, kUnit, SolverOptions{});
  const auto ref = brute_force_increment(3.0, 1.0, 1.0, 1.0);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(g[i + 1] - ref[i]) <= 2e-3);
  CHECK(g[0] == 0.0);
  CHECK(g[4] == 0.0);
  CHECK(std::abs(g[1] - g[3]) <= 1e-8);
}

TEST_CASE("evolve stays at zero below yield") {
  const SolverOptions opts;
  const Trajectory traj = evolve(LoadProgram::uniform(1.0, 10), kUnit, make_mesh(32), opts);
  CHECK(traj.steps.size() == 11);
  for (const auto& s : traj.steps) {
    CHECK(s.gamma.max_abs() == 0.0);
    CHECK(s.total_energy == 0.0);
  }
  CHECK(energy_balance_residual(traj) == 0.0);
  const YieldDetection det = detect_yield(traj, opts);
  CHECK_FALSE(det.yielded);
}

TEST_CASE("final state converges at first order under load-step halving") {
  const SolverOptions opts;
  const MeshPtr mesh = make_mesh(64);
  const Field g25 = evolve(LoadProgram::uniform(2.5, 25), kUnit, mesh, opts).steps.back().gamma;
  const Field g50 = evolve(LoadProgram::uniform(2.5, 50), kUnit, mesh, opts).steps.back().gamma;
  const Field g100 = evolve(LoadProgram::uniform(2.5, 100), kUnit, mesh, opts).steps.back().gamma;
  CHECK(g25.max_abs() > 0.1);
  const double d1 = (g25 - g50).max_abs();
  const double d2 = (g50 - g100).max_abs();
  CHECK(d1 <= 5e-3 * g25.max_abs());
  CHECK(d2 / d1 == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("gamma grows monotonically under monotone loading") {
  const Trajectory traj =
      evolve(LoadProgram::uniform(2.5, 25), kUnit, make_mesh(64), SolverOptions{});
  for (std::size_t k = 1; k < traj.steps.size(); ++k) {
    const Field d = traj.steps[k].gamma - traj.steps[k - 1].gamma;
    for (double v : d.values()) CHECK(v >= -1e-8);
  }
}

TEST_CASE("stability residual") {
  const SolverOptions opts;
  const MeshPtr mesh = make_mesh(64);
  const double theta_Y = theta_of_lambda(kUnit.lambda);
  CHECK(stability_residual(Field(mesh), 0.9 * theta_Y, kUnit, opts) <= 1e-10);
  CHECK(stability_residual(Field(mesh), 1.1 * theta_Y, kUnit, opts) > 1e-6);
  const Field g = increment_solve(Field(mesh), 2.5, kUnit, opts);
  CHECK(stability_residual(g, 2.5, kUnit, opts) <= 1e-8);
}

TEST_CASE("detect_yield brackets the formula") {
  const SolverOptions opts;
  const Trajectory traj = evolve(LoadProgram::uniform(2.5, 50), kUnit, make_mesh(128), opts);
  const YieldDetection det = detect_yield(traj, opts);
  REQUIRE(det.yielded);
  CHECK(det.uncertainty == doctest::Approx(0.05));
  CHECK(std::abs(det.theta - theta_of_lambda(kUnit.lambda)) <= det.uncertainty + 1e-12);
}

TEST_CASE("load program and options validation") {
  CHECK(LoadProgram::uniform(2.0, 4).theta_steps.size() == 5);
  CHECK(LoadProgram::uniform(2.0, 4).theta_steps.back() == 2.0);
  CHECK_THROWS_AS(LoadProgram::uniform(2.0, 0), ValidationError);
  CHECK_THROWS_AS(LoadProgram::uniform(-1.0, 4), ValidationError);
  LoadProgram bad{{0.0, 1.0, 0.5}};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  SolverOptions o;
  o.epsilon_schedule = {1e-2, 1e-1};
  CHECK_THROWS_AS(o.validate(), ValidationError);
  o = SolverOptions{};
  o.epsilon_schedule.clear();
  CHECK_THROWS_AS(o.validate(), ValidationError);
  o = SolverOptions{};
  o.newton_tol = 0.0;
  CHECK_THROWS_AS(o.validate(), ValidationError);
  o = SolverOptions{};
  o.max_newton_iters = 0;
  CHECK_THROWS_AS(o.validate(), ValidationError);

  NondimParams p = kUnit;
  p.kappa = 0.0;
  CHECK_THROWS(increment_solve(Field(make_mesh(8)), 2.0, p, SolverOptions{}));
}
