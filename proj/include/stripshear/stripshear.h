/* C interface to the strip-shear gradient plasticity library.
 *
 * Every function returns a stripshear_status; on failure the message is
 * available from stripshear_last_error() on the calling thread until the
 * next failing call. Array outputs take a capacity and fail with
 * STRIPSHEAR_INVALID_ARGUMENT when it is too small; query sizes first. */
#ifndef STRIPSHEAR_H
#define STRIPSHEAR_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef STRIPSHEAR_BUILDING_LIBRARY
#    define STRIPSHEAR_API __declspec(dllexport)
#  else
#    define STRIPSHEAR_API __declspec(dllimport)
#  endif
#else
#  define STRIPSHEAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum stripshear_status {
  STRIPSHEAR_OK = 0,
  STRIPSHEAR_INVALID_ARGUMENT = 1,
  STRIPSHEAR_DOMAIN_ERROR = 2,
  STRIPSHEAR_SOLVER_ERROR = 3,
  STRIPSHEAR_INTERNAL_ERROR = 4
} stripshear_status;

STRIPSHEAR_API const char* stripshear_last_error(void);
STRIPSHEAR_API const char* stripshear_version(void);
STRIPSHEAR_API const char* stripshear_status_name(stripshear_status s);

/* ---- parameters ---- */

typedef struct stripshear_physical_params {
  double S0, kappa, L, ell, h, G, d0, m_rate;
} stripshear_physical_params;

typedef struct stripshear_nondim_params {
  double lambda; /* ell / h */
  double Lambda; /* L / h */
  double kappa;
} stripshear_nondim_params;

/* The smoothing schedule runs from epsilon_start down to epsilon_end by
 * factors of 10. */
typedef struct stripshear_solver_options {
  double epsilon_start;
  double epsilon_end;
  double newton_tol;
  int max_newton_iters;
  double stability_tol;
  double yield_tol;
} stripshear_solver_options;

STRIPSHEAR_API void stripshear_default_physical_params(stripshear_physical_params* out);
STRIPSHEAR_API void stripshear_default_solver_options(stripshear_solver_options* out);
STRIPSHEAR_API stripshear_status stripshear_nondimensionalize(const stripshear_physical_params* p,
                                                              stripshear_nondim_params* out);

/* ---- local model ---- */

STRIPSHEAR_API stripshear_status stripshear_local_flow_response(double theta, double kappa,
                                                                double* out);
STRIPSHEAR_API stripshear_status stripshear_local_energy_balance_residual(const double* theta_grid,
                                                                          size_t n, double kappa,
                                                                          double* out);

/* ---- functionals on a uniform mesh with n_nodes = n_cells + 1 values ---- */

STRIPSHEAR_API stripshear_status stripshear_plastic_energy(const double* gamma, size_t n_nodes,
                                                           const stripshear_nondim_params* p,
                                                           double* out);
STRIPSHEAR_API stripshear_status stripshear_dissipation(const double* gamma, size_t n_nodes,
                                                        double lambda, double* out);
STRIPSHEAR_API stripshear_status stripshear_relaxed_dissipation(const double* phi, size_t n_nodes,
                                                                double lambda, double* out);
STRIPSHEAR_API stripshear_status stripshear_total_energy(double theta, const double* gamma,
                                                         size_t n_nodes,
                                                         const stripshear_nondim_params* p,
                                                         double* out);

/* ---- yield stress ---- */

STRIPSHEAR_API stripshear_status stripshear_lambda_of_theta(double theta_Y, double* out);
STRIPSHEAR_API stripshear_status stripshear_theta_of_lambda(double lambda, double* out);
/* Quadrature route to lambda(theta_Y), independent of the closed form. */
STRIPSHEAR_API stripshear_status stripshear_yield_integral(double theta_Y, size_t n_quad,
                                                           double* out);
STRIPSHEAR_API stripshear_status stripshear_yield_integral_converged(double theta_Y, double* out);
STRIPSHEAR_API stripshear_status stripshear_asymptotic_theta(double lambda, double* small_regime,
                                                             double* large_regime);

typedef struct stripshear_variational_result {
  double theta_Y;
  double residual;
  double multiplier;
  int iterations;
} stripshear_variational_result;

/* opts may be NULL for defaults. */
STRIPSHEAR_API stripshear_status stripshear_yield_variational(double lambda, size_t n_cells,
                                                              const stripshear_solver_options* opts,
                                                              stripshear_variational_result* out);

/* ---- minimizer profile ---- */

typedef struct stripshear_profile stripshear_profile;

typedef struct stripshear_profile_summary {
  double lambda;
  double theta_Y;
  double jump_ratio;
  double mass;
  double relaxed_dissipation;
  double endpoint_error;
  size_t n_samples; /* samples on [0, 1], including both ends */
} stripshear_profile_summary;

STRIPSHEAR_API stripshear_status stripshear_profile_create(double lambda, size_t n_intervals,
                                                           stripshear_profile** out);
STRIPSHEAR_API void stripshear_profile_destroy(stripshear_profile* p);
STRIPSHEAR_API stripshear_status stripshear_profile_get_summary(const stripshear_profile* p,
                                                                stripshear_profile_summary* out);
/* r, zeta and phi (unit-mass normalization) on the half interval [0, 1]. */
STRIPSHEAR_API stripshear_status stripshear_profile_get_samples(const stripshear_profile* p,
                                                                double* r, double* zeta,
                                                                double* phi, size_t capacity);

/* ---- incremental evolution ---- */

typedef struct stripshear_trajectory stripshear_trajectory;

typedef struct stripshear_step_info {
  double theta;
  double gamma_max;
  double gamma_mass;
  double dissipation_increment;
  double total_energy;
} stripshear_step_info;

typedef struct stripshear_yield_detection {
  double theta;
  double uncertainty;
  int yielded;
  size_t step;
} stripshear_yield_detection;

/* Uniform load theta_k = theta_max k / steps. opts may be NULL. */
STRIPSHEAR_API stripshear_status stripshear_evolve(const stripshear_nondim_params* p,
                                                   size_t n_cells, double theta_max, size_t steps,
                                                   const stripshear_solver_options* opts,
                                                   stripshear_trajectory** out);
STRIPSHEAR_API void stripshear_trajectory_destroy(stripshear_trajectory* t);
STRIPSHEAR_API size_t stripshear_trajectory_step_count(const stripshear_trajectory* t);
STRIPSHEAR_API size_t stripshear_trajectory_node_count(const stripshear_trajectory* t);
STRIPSHEAR_API stripshear_status stripshear_trajectory_step(const stripshear_trajectory* t,
                                                            size_t k, stripshear_step_info* out);
STRIPSHEAR_API stripshear_status stripshear_trajectory_gamma(const stripshear_trajectory* t,
                                                             size_t k, double* values,
                                                             size_t capacity);
STRIPSHEAR_API stripshear_status stripshear_trajectory_stability_residual(
    const stripshear_trajectory* t, size_t k, const stripshear_solver_options* opts, double* out);
STRIPSHEAR_API stripshear_status stripshear_trajectory_energy_balance(
    const stripshear_trajectory* t, double* out);
STRIPSHEAR_API stripshear_status stripshear_trajectory_detect_yield(
    const stripshear_trajectory* t, const stripshear_solver_options* opts,
    stripshear_yield_detection* out);

/* ---- viscoplastic model (physical variables) ---- */

typedef enum stripshear_hardening_kind {
  STRIPSHEAR_HARDENING_ZERO = 0,
  STRIPSHEAR_HARDENING_LINEAR = 1,
  STRIPSHEAR_HARDENING_SATURATING = 2
} stripshear_hardening_kind;

typedef struct stripshear_visco_params {
  stripshear_physical_params base;
  stripshear_hardening_kind hardening;
  double h0;
  double S_sat;
} stripshear_visco_params;

typedef struct stripshear_visco_options {
  double newton_tol;
  int max_newton_iters;
  double max_dt;
  int max_dt_halvings;
  double rate_regularization;
} stripshear_visco_options;

typedef struct stripshear_visco_state_info {
  double t;
  double gamma_max;   /* max |gamma| */
  double gamma_mean;  /* average over the strip */
  double S_min;
  double S_max;
  double dissipated;
} stripshear_visco_state_info;

typedef struct stripshear_visco_run stripshear_visco_run;

STRIPSHEAR_API void stripshear_default_visco_options(stripshear_visco_options* out);
/* One output state per load point (t strictly increasing). opts may be NULL. */
STRIPSHEAR_API stripshear_status stripshear_visco_simulate(const stripshear_visco_params* p,
                                                           size_t n_cells, const double* t,
                                                           const double* tau, size_t n_load,
                                                           const stripshear_visco_options* opts,
                                                           stripshear_visco_run** out);
STRIPSHEAR_API void stripshear_visco_run_destroy(stripshear_visco_run* run);
STRIPSHEAR_API size_t stripshear_visco_state_count(const stripshear_visco_run* run);
STRIPSHEAR_API size_t stripshear_visco_node_count(const stripshear_visco_run* run);
/* Physical node positions y in [-h, h]. */
STRIPSHEAR_API stripshear_status stripshear_visco_nodes(const stripshear_visco_run* run,
                                                        double* y, size_t capacity);
STRIPSHEAR_API stripshear_status stripshear_visco_state(const stripshear_visco_run* run, size_t k,
                                                        stripshear_visco_state_info* out);
STRIPSHEAR_API stripshear_status stripshear_visco_gamma(const stripshear_visco_run* run, size_t k,
                                                        double* values, size_t capacity);
/* Displacement of state k at its load value. */
STRIPSHEAR_API stripshear_status stripshear_visco_displacement(const stripshear_visco_run* run,
                                                               size_t k, double* values,
                                                               size_t capacity);

/* Ramp to tau_max over t_end in `steps` steps for each m; discrepancies has
 * n_m entries. *decreasing is set to 1 when they strictly decrease. */
STRIPSHEAR_API stripshear_status stripshear_visco_limit_study(
    const stripshear_visco_params* p, size_t n_cells, const double* m_list, size_t n_m,
    double tau_max, double t_end, size_t steps, double* discrepancies, int* decreasing);

/* ---- acceptance suite ---- */

typedef struct stripshear_criterion_result {
  int id;
  int passed;
  double seconds;
  char name[128];
  char detail[2048];
} stripshear_criterion_result;

STRIPSHEAR_API size_t stripshear_verify_count(void);
STRIPSHEAR_API stripshear_status stripshear_verify_run(int id, stripshear_criterion_result* out);

#ifdef __cplusplus
}
#endif

#endif
