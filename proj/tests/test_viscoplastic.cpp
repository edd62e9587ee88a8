#include <doctest.h>

#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "core/error.hpp"
#include "core/viscoplastic.hpp"

using namespace stripshear;

namespace {

ViscoParams rate_params(double m) {
  ViscoParams p;
  p.base.m_rate = m;
  return p;
}

std::vector<LoadPoint> ramp(double tau_max, double t_end, std::size_t n) {
  std::vector<LoadPoint> load;
  for (std::size_t k = 0; k <= n; ++k) {
    const double t = t_end * static_cast<double>(k) / static_cast<double>(n);
    load.push_back({t, tau_max * t / t_end});
  }
  return load;
}

// Backward-Euler rate of the scalar local law S0 kappa gamma + S (d/d0)^m
// sign(q) = tau with the same rate regularization as the solver.
double local_rate(double gamma0, double tau, double dt, const PhysicalParams& p, double S,
                  double eps) {
  auto f = [&](double q) {
    const double d = std::sqrt(q * q + eps * eps);
    return p.S0 * p.kappa * (gamma0 + dt * q) + S * std::pow(d / p.d0, p.m_rate) * q / d - tau;
  };
  const double bound = (std::abs(tau) + p.S0 * p.kappa * std::abs(gamma0)) / (p.S0 * p.kappa * dt) + 1.0;
  boost::uintmax_t it = 300;
  const auto br = boost::math::tools::toms748_solve(
      f, -bound, bound, boost::math::tools::eps_tolerance<double>(), it);
  return 0.5 * (br.first + br.second);
}

}  // namespace

TEST_CASE("virgin state") {
  const ViscoParams p = rate_params(0.1);
  const ViscoState s = visco_initial_state(0.0, p, make_mesh(16));
  CHECK(s.gamma.max_abs() == 0.0);
  for (double v : s.S.values()) CHECK(v == p.base.S0);
  CHECK(s.dissipated == 0.0);
}

TEST_CASE("zero load leaves the virgin state unchanged") {
  const ViscoParams p = rate_params(0.1);
  const auto states = simulate_visco({{0.0, 0.0}, {1.0, 0.0}}, p, make_mesh(32), ViscoOptions{});
  REQUIRE(states.size() == 2);
  CHECK(states.back().gamma.max_abs() <= 1e-12);
  CHECK(states.back().t == doctest::Approx(1.0));
}

TEST_CASE("load below S0 produces negligible flow for small m") {
  const ViscoParams p = rate_params(0.05);
  const auto states = simulate_visco(ramp(0.5, 1.0, 10), p, make_mesh(32), ViscoOptions{});
  CHECK(states.back().gamma.max_abs() <= 1e-5);
}

TEST_CASE("local limit matches the scalar ODE at the center node") {
  ViscoParams p = rate_params(0.2);
  p.base.L = 0.0;
  p.base.ell = 0.0;
  const MeshPtr mesh = make_mesh(64);
  const std::size_t mid = mesh->size() / 2;
  const ViscoOptions opts;
  ViscoState s = visco_initial_state(0.0, p, mesh);
  double gamma = 0.0;
  const double dt = 0.01;
  for (int k = 1; k <= 150; ++k) {
    const double tau = 2.0 * std::sin(0.02 * k);
    s = visco_step(s, tau, dt, p, opts);
    const double q = local_rate(gamma, tau, dt, p.base, p.base.S0,
                                opts.rate_regularization * p.base.d0);
    gamma += dt * q;
    CHECK(std::abs(s.gamma[mid] - gamma) <= 1e-8);
  }
  CHECK(gamma > 0.1);
}

TEST_CASE("cyclic loading dissipates on both branches") {
  const ViscoParams p = rate_params(0.1);
  const std::vector<LoadPoint> load{{0.0, 0.0}, {1.0, 2.5}, {2.0, -2.5}, {3.0, 0.0}};
  const auto states = simulate_visco(load, p, make_mesh(64), ViscoOptions{});
  REQUIRE(states.size() == 4);
  CHECK(states[1].dissipated > 0.0);
  CHECK(states[2].dissipated > states[1].dissipated);
  CHECK(states[3].dissipated >= states[2].dissipated);
  CHECK(states[1].gamma.max_abs() > 0.1);
  for (const auto& s : states) CHECK(s.min_dissipation_power >= 0.0);
}

TEST_CASE("gamma is symmetric about the midplane") {
  const ViscoParams p = rate_params(0.1);
  const auto states = simulate_visco(ramp(2.5, 1.0, 20), p, make_mesh(64), ViscoOptions{});
  const auto v = states.back().gamma.values();
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - v[v.size() - 1 - i]) <= 1e-10);
}

TEST_CASE("hardening") {
  ViscoParams p = rate_params(0.1);
  const MeshPtr mesh = make_mesh(32);
  const auto soft = simulate_visco(ramp(2.5, 1.0, 20), p, mesh, ViscoOptions{});
  for (const auto& s : soft)
    for (double v : s.S.values()) CHECK(v == p.base.S0);

  for (const Hardening h : {Hardening::linear(2.0), Hardening::saturating(2.0, 3.0)}) {
    p.hardening = h;
    const auto hard = simulate_visco(ramp(2.5, 1.0, 20), p, mesh, ViscoOptions{});
    for (std::size_t k = 1; k < hard.size(); ++k)
      for (std::size_t i = 0; i < mesh->size(); ++i) CHECK(hard[k].S[i] >= hard[k - 1].S[i]);
    CHECK(hard.back().S[mesh->size() / 2] > p.base.S0);
    CHECK(hard.back().gamma.max_abs() < soft.back().gamma.max_abs());
  }
  CHECK(Hardening::saturating(2.0, 3.0)(3.0) == 0.0);
  CHECK(Hardening::linear(2.0)(10.0) == 2.0);
  CHECK(Hardening::zero()(1.0) == 0.0);
}

TEST_CASE("displacement recovery") {
  const ViscoParams p = rate_params(0.1);
  const MeshPtr mesh = make_mesh(16);
  const ViscoState s = visco_initial_state(0.0, p, mesh);
  const Field u = recover_displacement(s, p.base.G, p);
  for (std::size_t i = 0; i < mesh->size(); ++i)
    CHECK(u[i] == doctest::Approx(p.base.h * mesh->node(i) + p.base.h).epsilon(1e-14));
  CHECK(u[0] == 0.0);

  const auto states = simulate_visco(ramp(2.5, 1.0, 20), p, mesh, ViscoOptions{});
  const double tau = 2.5;
  const Field w = recover_displacement(states.back(), tau, p);
  CHECK(w[0] == 0.0);
  const Field& g = states.back().gamma;
  for (std::size_t c = 0; c + 1 < mesh->size(); ++c) {
    const double dy = p.base.h * mesh->width(c);
    const double slope = (w[c + 1] - w[c]) / dy;
    CHECK(slope == doctest::Approx(tau / p.base.G + 0.5 * (g[c] + g[c + 1])).epsilon(1e-12));
  }
}

TEST_CASE("rate-independent limit study") {
  const ViscoParams p = rate_params(0.1);
  const MeshPtr mesh = make_mesh(64);
  const LimitStudy study = rate_independent_limit_study({0.2, 0.1, 0.05}, p, mesh, 2.0, 1.0, 40,
                                                        ViscoOptions{}, SolverOptions{});
  REQUIRE(study.entries.size() == 3);
  CHECK(study.decreasing);
  CHECK(study.reference.max_abs() > 0.01);
  for (std::size_t k = 1; k < study.entries.size(); ++k)
    CHECK(study.entries[k].discrepancy < study.entries[k - 1].discrepancy);

  const LimitStudy below = rate_independent_limit_study({0.1, 0.05}, p, mesh, 0.5, 1.0, 10,
                                                        ViscoOptions{}, SolverOptions{});
  CHECK(below.reference.max_abs() == 0.0);
  for (const auto& e : below.entries) CHECK(e.discrepancy <= 1e-3);

  ViscoParams hard = p;
  hard.hardening = Hardening::linear(1.0);
  CHECK_THROWS_AS(rate_independent_limit_study({0.1}, hard, mesh, 2.0, 1.0, 10, ViscoOptions{},
                                               SolverOptions{}),
                  ValidationError);
  CHECK_THROWS_AS(rate_independent_limit_study({0.05, 0.1}, p, mesh, 2.0, 1.0, 10, ViscoOptions{},
                                               SolverOptions{}),
                  ValidationError);
}

TEST_CASE("invalid inputs") {
  const MeshPtr mesh = make_mesh(8);
  CHECK_THROWS_AS(visco_initial_state(0.0, rate_params(0.0), mesh), ValidationError);
  CHECK_THROWS_AS(visco_initial_state(0.0, rate_params(-0.5), mesh), ValidationError);
  ViscoParams p = rate_params(0.1);
  p.hardening = Hardening::linear(-1.0);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p.hardening = Hardening::saturating(1.0, 0.0);
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = rate_params(0.1);
  p.base.h = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);

  p = rate_params(0.1);
  const ViscoState s = visco_initial_state(0.0, p, mesh);
  CHECK_THROWS_AS(visco_step(s, 1.0, 0.0, p, ViscoOptions{}), ValidationError);
  CHECK_THROWS_AS(visco_step(s, std::nan(""), 0.1, p, ViscoOptions{}), ValidationError);
  CHECK_THROWS_AS(simulate_visco({}, p, mesh, ViscoOptions{}), ValidationError);
  CHECK_THROWS_AS(simulate_visco({{0.0, 0.0}, {0.0, 1.0}}, p, mesh, ViscoOptions{}), ValidationError);
  ViscoOptions o;
  o.max_dt = 0.0;
  CHECK_THROWS_AS(o.validate(), ValidationError);
}
