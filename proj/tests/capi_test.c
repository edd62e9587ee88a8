/* Exercises the C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "stripshear/stripshear.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static int close_rel(double a, double b, double tol) { return fabs(a - b) <= tol * fabs(b); }

static void test_errors(void) {
  double v = 0.0;
  EXPECT(stripshear_lambda_of_theta(0.5, &v) == STRIPSHEAR_DOMAIN_ERROR);
  EXPECT(strlen(stripshear_last_error()) > 0);
  EXPECT(stripshear_lambda_of_theta(2.0, NULL) == STRIPSHEAR_INVALID_ARGUMENT);
  EXPECT(stripshear_local_flow_response(2.0, 0.0, &v) == STRIPSHEAR_DOMAIN_ERROR);
  EXPECT(strcmp(stripshear_status_name(STRIPSHEAR_OK), "ok") == 0);
  EXPECT(strlen(stripshear_version()) > 0);
}

static void test_model(void) {
  stripshear_physical_params p;
  stripshear_nondim_params n;
  double v = -1.0;
  stripshear_default_physical_params(&p);
  p.ell = 0.5;
  p.h = 2.0;
  EXPECT(stripshear_nondimensionalize(&p, &n) == STRIPSHEAR_OK);
  EXPECT(n.lambda == 0.25);
  EXPECT(n.Lambda == 0.5);
  p.h = -1.0;
  EXPECT(stripshear_nondimensionalize(&p, &n) == STRIPSHEAR_INVALID_ARGUMENT);
  EXPECT(stripshear_local_flow_response(2.0, 1.0, &v) == STRIPSHEAR_OK && v == 1.0);
  EXPECT(stripshear_local_flow_response(0.5, 1.0, &v) == STRIPSHEAR_OK && v == 0.0);
}

static void test_functionals(void) {
  double hat[9];
  double half[9];
  double v = 0.0;
  stripshear_nondim_params p = {1.0, 1.0, 2.0};
  int i;
  for (i = 0; i < 9; ++i) {
    hat[i] = 1.0 - fabs(-1.0 + 0.25 * i);
    half[i] = 0.5;
  }
  EXPECT(stripshear_plastic_energy(hat, 9, &p, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 8.0 / 3.0, 1e-14));
  EXPECT(stripshear_total_energy(1.0, hat, 9, &p, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 5.0 / 3.0, 1e-14));
  EXPECT(stripshear_relaxed_dissipation(half, 9, 1.0, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 2.0, 1e-14));
  EXPECT(stripshear_dissipation(hat, 9, 0.0, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 1.0, 1e-14));
  EXPECT(stripshear_dissipation(hat, 8, 1.0, &v) == STRIPSHEAR_INVALID_ARGUMENT);
}

static void test_yield(void) {
  double v = 0.0, s = 0.0, l = 0.0;
  stripshear_variational_result vr;
  EXPECT(stripshear_lambda_of_theta(2.0, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 1.17979786038299229, 1e-14));
  EXPECT(stripshear_theta_of_lambda(1.0, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 1.825225026201378547, 1e-13));
  EXPECT(stripshear_yield_integral_converged(2.0, &v) == STRIPSHEAR_OK);
  EXPECT(close_rel(v, 1.17979786038299229, 1e-12));
  EXPECT(stripshear_asymptotic_theta(100.0, &s, &l) == STRIPSHEAR_OK);
  EXPECT(close_rel(l, 100.0 + atan(1.0), 1e-15));
  EXPECT(stripshear_yield_variational(1.0, 256, NULL, &vr) == STRIPSHEAR_OK);
  EXPECT(fabs(vr.theta_Y - 1.825225026201378547) <= 1e-3);
}

static void test_profile(void) {
  stripshear_profile* prof = NULL;
  stripshear_profile_summary sum;
  double lambda = 0.0;
  double *r, *z, *phi;
  EXPECT(stripshear_lambda_of_theta(sqrt(2.0), &lambda) == STRIPSHEAR_OK);
  EXPECT(stripshear_profile_create(lambda, 2000, &prof) == STRIPSHEAR_OK);
  if (!prof) return;
  EXPECT(stripshear_profile_get_summary(prof, &sum) == STRIPSHEAR_OK);
  EXPECT(fabs(sum.jump_ratio - (1.0 - sqrt(0.5))) <= 1e-6);
  r = malloc(sum.n_samples * sizeof(double));
  z = malloc(sum.n_samples * sizeof(double));
  phi = malloc(sum.n_samples * sizeof(double));
  EXPECT(stripshear_profile_get_samples(prof, r, z, phi, sum.n_samples - 1) ==
         STRIPSHEAR_INVALID_ARGUMENT);
  EXPECT(stripshear_profile_get_samples(prof, r, z, phi, sum.n_samples) == STRIPSHEAR_OK);
  EXPECT(r[0] == 0.0 && r[sum.n_samples - 1] == 1.0);
  EXPECT(fabs(phi[sum.n_samples - 1] / phi[0] - sum.jump_ratio) <= 1e-12);
  free(r);
  free(z);
  free(phi);
  stripshear_profile_destroy(prof);
  stripshear_profile_destroy(NULL);
}

static void test_trajectory(void) {
  stripshear_nondim_params p = {1.0, 1.0, 1.0};
  stripshear_trajectory* t = NULL;
  stripshear_yield_detection det;
  stripshear_step_info info;
  double res = 1.0;
  double* g;
  size_t n;
  EXPECT(stripshear_evolve(&p, 64, 2.5, 25, NULL, &t) == STRIPSHEAR_OK);
  if (!t) return;
  EXPECT(stripshear_trajectory_step_count(t) == 26);
  n = stripshear_trajectory_node_count(t);
  EXPECT(n == 65);
  EXPECT(stripshear_trajectory_detect_yield(t, NULL, &det) == STRIPSHEAR_OK);
  EXPECT(det.yielded == 1);
  EXPECT(fabs(det.theta - 1.825225026201378547) <= det.uncertainty + 1e-12);
  EXPECT(stripshear_trajectory_step(t, 25, &info) == STRIPSHEAR_OK);
  EXPECT(info.theta == 2.5 && info.gamma_max > 0.1);
  EXPECT(stripshear_trajectory_step(t, 26, &info) == STRIPSHEAR_INVALID_ARGUMENT);
  g = malloc(n * sizeof(double));
  EXPECT(stripshear_trajectory_gamma(t, 25, g, n) == STRIPSHEAR_OK);
  EXPECT(g[0] == 0.0 && g[n - 1] == 0.0 && g[n / 2] > 0.1);
  free(g);
  EXPECT(stripshear_trajectory_stability_residual(t, 25, NULL, &res) == STRIPSHEAR_OK);
  EXPECT(res <= 1e-8);
  EXPECT(stripshear_trajectory_energy_balance(t, &res) == STRIPSHEAR_OK);
  EXPECT(res < 1e-2);
  stripshear_trajectory_destroy(t);
  p.kappa = 0.0;
  t = NULL;
  EXPECT(stripshear_evolve(&p, 64, 2.5, 25, NULL, &t) != STRIPSHEAR_OK);
  EXPECT(t == NULL);
}

static void test_visco(void) {
  stripshear_visco_params p;
  stripshear_visco_run* run = NULL;
  stripshear_visco_state_info info;
  double t[3] = {0.0, 1.0, 2.0};
  double tau[3] = {0.0, 2.5, 2.5};
  double m_list[2] = {0.2, 0.1};
  double disc[2] = {0.0, 0.0};
  double* u;
  int decreasing = 0;
  size_t n;
  memset(&p, 0, sizeof p);
  stripshear_default_physical_params(&p.base);
  p.base.m_rate = 0.1;
  p.hardening = STRIPSHEAR_HARDENING_LINEAR;
  p.h0 = 1.0;
  EXPECT(stripshear_visco_simulate(&p, 32, t, tau, 3, NULL, &run) == STRIPSHEAR_OK);
  if (!run) return;
  EXPECT(stripshear_visco_state_count(run) == 3);
  n = stripshear_visco_node_count(run);
  EXPECT(n == 33);
  EXPECT(stripshear_visco_state(run, 2, &info) == STRIPSHEAR_OK);
  EXPECT(info.t == 2.0 && info.gamma_max > 0.1 && info.S_max > p.base.S0 && info.dissipated > 0.0);
  u = malloc(n * sizeof(double));
  EXPECT(stripshear_visco_displacement(run, 2, u, n) == STRIPSHEAR_OK);
  EXPECT(u[0] == 0.0 && u[n - 1] > 0.0);
  free(u);
  stripshear_visco_run_destroy(run);

  p.hardening = STRIPSHEAR_HARDENING_ZERO;
  EXPECT(stripshear_visco_limit_study(&p, 32, m_list, 2, 2.0, 1.0, 20, disc, &decreasing) ==
         STRIPSHEAR_OK);
  EXPECT(decreasing == 1 && disc[1] < disc[0]);
  p.base.m_rate = 0.0;
  run = NULL;
  EXPECT(stripshear_visco_simulate(&p, 32, t, tau, 3, NULL, &run) == STRIPSHEAR_INVALID_ARGUMENT);
}

static void test_verify(void) {
  stripshear_criterion_result r;
  EXPECT(stripshear_verify_count() == 13);
  EXPECT(stripshear_verify_run(1, &r) == STRIPSHEAR_OK);
  EXPECT(r.id == 1 && r.passed == 1 && strlen(r.name) > 0);
  EXPECT(stripshear_verify_run(14, &r) == STRIPSHEAR_INVALID_ARGUMENT);
}

int main(void) {
  test_errors();
  test_model();
  test_functionals();
  test_yield();
  test_profile();
  test_trajectory();
  test_visco();
  test_verify();
  if (failures) {
    fprintf(stderr, "%d C API check(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
