#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/functionals.hpp"

using namespace stripshear;

namespace {

Field hat(std::size_t n_cells, double peak = 1.0) {
  const auto mesh = make_mesh(n_cells);
  std::vector<double> v(mesh->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = peak * (1.0 - std::abs(mesh->node(i)));
  return Field(mesh, std::move(v));
}

Field sampled(std::size_t n_cells, double (*f)(double)) {
  const auto mesh = make_mesh(n_cells);
  std::vector<double> v(mesh->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh->node(i));
  return Field(mesh, std::move(v));
}

const double kHatDissipation = 2.295587149392638;  // sqrt(2) + asinh(1)

}  // namespace

TEST_CASE("plastic_energy examples") {
  CHECK(plastic_energy(Field(make_mesh(8)), {1.0, 1.0, 1.0}) == 0.0);
  CHECK(plastic_energy(hat(8), {1.0, 1.0, 2.0}) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(plastic_energy(hat(8), {1.0, 0.5, 2.0}) == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("dissipation examples") {
  CHECK(dissipation(Field(make_mesh(8)), 1.0) == 0.0);
  CHECK(dissipation(hat(64), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(dissipation(hat(1024), 1.0) == doctest::Approx(kHatDissipation).epsilon(1e-12));
  CHECK(dissipation(hat(2), 1.0) == doctest::Approx(kHatDissipation).epsilon(1e-3));
}

TEST_CASE("relaxed_dissipation examples") {
  const auto mesh = make_mesh(16);
  CHECK(relaxed_dissipation(RelaxedField(Field(mesh)), 1.0) == 0.0);
  const RelaxedField half(Field(mesh, std::vector<double>(mesh->size(), 0.5)));
  CHECK(half.mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(relaxed_dissipation(half, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(relaxed_dissipation(half, 0.25) == doctest::Approx(1.25).epsilon(1e-15));
  const Field h = hat(16);
  CHECK(relaxed_dissipation(RelaxedField(h), 0.7) == dissipation(h, 0.7));
}

TEST_CASE("total_energy examples") {
  const NondimParams p{1.0, 1.0, 2.0};
  CHECK(total_energy(3.7, Field(make_mesh(8)), p) == 0.0);
  CHECK(total_energy(0.0, hat(8), p) == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(total_energy(1.0, hat(8), p) == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("dissipation_distance examples") {
  const Field g = hat(1024);
  CHECK(dissipation_distance(g, g, 1.0) == 0.0);
  CHECK(dissipation_distance(g, Field(g.mesh_ptr()), 1.0) == dissipation(g, 1.0));
  CHECK(dissipation_distance(g, hat(1024, 2.0), 1.0) ==
        doctest::Approx(kHatDissipation).epsilon(1e-12));
  CHECK_THROWS_AS(dissipation_distance(g, hat(512), 1.0), ValidationError);
  const Field g2 = hat(1024, 0.3);
  CHECK(dissipation_distance(g, g2, 1.3) == dissipation_distance(g2, g, 1.3));
}

TEST_CASE("dissipation bounds on random fields") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0), len(0.05, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mesh = make_mesh(32);
    std::vector<double> v(mesh->size());
    for (double& x : v) x = u(rng);
    const Field f(mesh, v);
    const double lambda = len(rng);
    const double psi = dissipation(f, lambda);
    const double l1 = l1_norm(f);
    const double tv = total_variation(f);
    CHECK(psi >= std::max(l1, lambda * tv) * (1.0 - 1e-14));
    CHECK(psi <= (l1 + lambda * tv) * (1.0 + 1e-14));
  }
}

TEST_CASE("dissipation converges at second order on smooth data") {
  auto f = [](double r) { return std::cos(0.5 * 3.141592653589793 * r) + 0.3 * r; };
  const double ref = dissipation(sampled(16384, f), 0.8);
  const double e1 = std::abs(dissipation(sampled(64, f), 0.8) - ref);
  const double e2 = std::abs(dissipation(sampled(256, f), 0.8) - ref);
  CHECK(std::log(e1 / e2) / std::log(4.0) >= 1.9);
}

TEST_CASE("lambda validation") {
  CHECK_THROWS_AS(dissipation(hat(4), -1.0), ValidationError);
  CHECK_THROWS_AS(dissipation(hat(4), std::nan("")), ValidationError);
}
