#include <doctest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/yield.hpp"

using namespace stripshear;

TEST_CASE("lambda_of_theta reference values") {
  CHECK(lambda_of_theta(std::sqrt(2.0)) == doctest::Approx(0.567741213315211556).epsilon(1e-14));
  CHECK(lambda_of_theta(2.0) == doctest::Approx(1.17979786038299229).epsilon(1e-14));
  CHECK(lambda_of_theta(1.001) == doctest::Approx(0.01476457305327024).epsilon(1e-12));
  CHECK(lambda_of_theta(50.0) == doctest::Approx(49.21359484270165585).epsilon(1e-14));
  CHECK(lambda_of_excess(1.0) == lambda_of_theta(2.0));
}

TEST_CASE("theta_of_lambda reference values") {
  CHECK(theta_of_lambda(1.0) == doctest::Approx(1.825225026201378547).epsilon(1e-13));
  CHECK(theta_of_lambda(0.25) == doctest::Approx(1.136433988316939).epsilon(1e-13));
  CHECK(theta_of_lambda(4.0) == doctest::Approx(4.797105740927299664).epsilon(1e-13));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(lambda_of_theta(1.0), DomainError);
  CHECK_THROWS_AS(lambda_of_theta(0.5), DomainError);
  CHECK(lambda_of_excess(0.0) == 0.0);
  CHECK_THROWS_AS(lambda_of_excess(-1e-3), DomainError);
  CHECK_THROWS_AS(yield_integral(1.0, 64), DomainError);
  CHECK_THROWS(theta_of_lambda(0.0));
  CHECK_THROWS(theta_of_lambda(-1.0));
}

TEST_CASE("formula is increasing and inverts") {
  double prev = 0.0;
  for (double u = 1e-6; u < 1e3; u *= 1.7) {
    const double l = lambda_of_excess(u);
    CHECK(l > prev);
    prev = l;
    const double t = theta_of_lambda(l);
    CHECK(std::abs(t - (1.0 + u)) <= 1e-12 * (1.0 + u));
  }
}

TEST_CASE("yield stress bounds") {
  for (double l = 1e-3; l < 1e3; l *= 2.3) {
    const double t = theta_of_lambda(l);
    CHECK(t > 1.0);
    CHECK(t <= 1.0 + l);
    CHECK(t >= l);
  }
}

TEST_CASE("quadrature agrees with the closed form") {
  for (double t : {1.01, std::sqrt(2.0), 2.0, 5.0, 30.0}) {
    const double lq = yield_integral_converged(t);
    CHECK(std::abs(lq - lambda_of_theta(t)) <= 1e-12 * lambda_of_theta(t));
  }
}

TEST_CASE("asymptotic regimes") {
  const AsymptoticTheta small = asymptotic_theta(1e-3);
  CHECK(small.small_regime == doctest::Approx(1.0 + 0.5 * M_PI * M_PI * 1e-6));
  CHECK(std::abs(theta_of_lambda(1e-3) - small.small_regime) <= 1e-6);
  const AsymptoticTheta large = asymptotic_theta(100.0);
  CHECK(large.large_regime == doctest::Approx(100.0 + M_PI / 4.0));
  CHECK(std::abs(theta_of_lambda(100.0) - large.large_regime) <= 1e-2);
}

TEST_CASE("stability indicator") {
  const NondimParams p{1.0, 1.0, 1.0};
  const MeshPtr mesh = make_mesh(64);
  const double t = theta_of_lambda(1.0);
  CHECK(std::abs(stability_indicator(0.9 * t, p, mesh, SolverOptions{})) <= 1e-10);
  CHECK(stability_indicator(1.2 * t, p, mesh, SolverOptions{}) < -1e-6);
}

TEST_CASE("reduced indicator sign") {
  const MeshPtr mesh = make_mesh(256);
  const double l = 1.0;
  CHECK(reduced_stability_indicator_sign(1.0, l, mesh) == Sign::nonnegative);
  CHECK(reduced_stability_indicator_sign(0.999 * theta_of_lambda(l), l, mesh) == Sign::nonnegative);
  CHECK(reduced_stability_indicator_sign(1.0 + l, l, mesh) == Sign::negative);
  CHECK(reduced_stability_indicator_sign(1.01 * theta_of_lambda(l), l, mesh) == Sign::negative);
}

TEST_CASE("variational yield stress") {
  for (double l : {0.25, 1.0, 4.0}) {
    const YieldResult r = yield_variational(l, make_mesh(512));
    const double exact = theta_of_lambda(l);
    CHECK(r.theta_Y <= 1.0 + l + 1e-12);
    CHECK(r.theta_Y >= exact * (1.0 - 1e-12));
    CHECK(std::abs(r.theta_Y - exact) <= 1e-4 * exact);
    CHECK(r.minimizer.mass() == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : r.minimizer.values()) CHECK(v >= -1e-12);
  }
}

TEST_CASE("variational yield converges under refinement") {
  const double exact = theta_of_lambda(1.0);
  const double e1 = yield_variational(1.0, make_mesh(128)).theta_Y - exact;
  const double e2 = yield_variational(1.0, make_mesh(512)).theta_Y - exact;
  CHECK(e2 < e1);
}

TEST_CASE("minimizer profile") {
  const ProfileResult pr = minimizer_profile(lambda_of_theta(std::sqrt(2.0)));
  CHECK(pr.theta_Y == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(pr.jump_ratio == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-6));
  CHECK(pr.mass == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pr.relaxed_dissipation == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(pr.r.front() == 0.0);
  CHECK(pr.r.back() == 1.0);
  CHECK(pr.zeta.front() == 0.0);
  CHECK(pr.zeta.back() == doctest::Approx(1.0));
  for (std::size_t i = 1; i < pr.zeta.size(); ++i) {
    CHECK(pr.zeta[i] > pr.zeta[i - 1]);
    CHECK(pr.r[i] > pr.r[i - 1]);
  }
  const auto v = pr.phi.values();
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == doctest::Approx(v[v.size() - 1 - i]));
}

TEST_CASE("yield_simulation") {
  const NondimParams p{1.0, 1.0, 1.0};
  const YieldResult r = yield_simulation(2.5, 50, p, make_mesh(128));
  CHECK(std::abs(r.theta_Y - theta_of_lambda(1.0)) <= r.load_step + 1e-12);
  const YieldResult none = yield_simulation(1.5, 10, p, make_mesh(64));
  CHECK(none.residual == 1.0);
}
