/* saddlevr — stochastic proximal-point and variance-reduced solvers for
 * strongly convex-concave finite-sum saddle-point problems.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * thread-local error messages.  All handles are created by the library and
 * released with the matching *_free function.  Problem handles are immutable
 * and may be used from several threads at once; trace, batch and report
 * handles belong to one thread at a time.
 */
#ifndef SADDLEVR_H
#define SADDLEVR_H

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define SADDLEVR_API __attribute__((visibility("default")))
#else
#define SADDLEVR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* ------------------------------------------------------------------ */
/* status codes                                                        */
/* ------------------------------------------------------------------ */

enum {
  SADDLEVR_OK = 0,
  SADDLEVR_ERR_INVALID = 1,     /* bad argument or configuration */
  SADDLEVR_ERR_IO = 2,          /* file could not be read or written */
  SADDLEVR_ERR_FORMAT = 3,      /* malformed input file */
  SADDLEVR_ERR_DIVERGED = 4,    /* solver aborted on a divergent iterate */
  SADDLEVR_ERR_UNSUPPORTED = 5, /* operation undefined for this handle */
  SADDLEVR_ERR_INTERNAL = 6
};

SADDLEVR_API const char* saddlevr_version(void);

/* Message for the most recent failure on the calling thread. */
SADDLEVR_API const char* saddlevr_last_error(void);

/* ------------------------------------------------------------------ */
/* problems                                                            */
/* ------------------------------------------------------------------ */

typedef struct saddlevr_problem saddlevr_problem;

/* Random smooth quadratic family with exact strong convexity-concavity
 * modulus mu and component operator Lipschitz constant lip.
 * block_spread in (0,1] sets how much of the conditioning lives in the
 * diagonal blocks versus the coupling; linear_scale sizes the linear terms. */
SADDLEVR_API int saddlevr_problem_quadratic_random(uint64_t seed, int64_t n,
                                                   int32_t dx, int32_t dy,
                                                   double mu, double lip,
                                                   double block_spread,
                                                   double linear_scale,
                                                   saddlevr_problem** out);

/* Built-in single-component 1-D demo: f(x,y) = x^2/2 - x + xy - y^2/2 - y,
 * saddle at (1, 0). */
SADDLEVR_API int saddlevr_problem_demo(saddlevr_problem** out);

typedef struct saddlevr_batch saddlevr_batch;

/* Policy-evaluation problem from trajectory samples. */
SADDLEVR_API int saddlevr_problem_mspbe(const saddlevr_batch* batch, double rho,
                                        double lambda, saddlevr_problem** out);

/* Random separable non-smooth family (l1 terms per component). */
SADDLEVR_API int saddlevr_problem_nonsmooth_random(uint64_t seed, int64_t n,
                                                   int32_t d, double mu,
                                                   double scale,
                                                   saddlevr_problem** out);

/* Variable-rescaling wrapper for problems with mu_x != mu_y; the result
 * reports mu = 1.  The base handle may be freed afterwards. */
SADDLEVR_API int saddlevr_problem_scaled(const saddlevr_problem* base, double mu_x,
                                         double mu_y, saddlevr_problem** out);

SADDLEVR_API void saddlevr_problem_free(saddlevr_problem* p);

SADDLEVR_API int64_t saddlevr_problem_n(const saddlevr_problem* p);
SADDLEVR_API int32_t saddlevr_problem_dx(const saddlevr_problem* p);
SADDLEVR_API int32_t saddlevr_problem_dy(const saddlevr_problem* p);
SADDLEVR_API double saddlevr_problem_mu(const saddlevr_problem* p);
SADDLEVR_API double saddlevr_problem_lip(const saddlevr_problem* p);
SADDLEVR_API int saddlevr_problem_has_primal_metric(const saddlevr_problem* p);

/* Exact saddle of the averaged objective; x has dx entries, y has dy. */
SADDLEVR_API int saddlevr_problem_saddle(const saddlevr_problem* p, double* x,
                                         double* y);

/* ------------------------------------------------------------------ */
/* solver runs                                                         */
/* ------------------------------------------------------------------ */

enum {
  SADDLEVR_METHOD_POINT_SAGA = 0,
  SADDLEVR_METHOD_SAGA = 1,
  SADDLEVR_METHOD_SVRG = 2,
  SADDLEVR_METHOD_SVRG_CATALYST = 3,
  SADDLEVR_METHOD_SAGA_CATALYST = 4,
  SADDLEVR_METHOD_FB = 5,
  SADDLEVR_METHOD_AFB = 6,
  SADDLEVR_METHOD_SFB = 7,
  SADDLEVR_METHOD_POINT_SAGA_NONSMOOTH = 8
};

SADDLEVR_API const char* saddlevr_method_name(int method);
SADDLEVR_API int saddlevr_method_from_name(const char* name, int* method);

typedef struct saddlevr_solver_config {
  int method;
  double gamma;        /* <= 0: automatic (closed form / tuned grid) */
  double theta;        /* extrapolation weight, afb only */
  double tau;          /* catalyst regularization strength; < 0: automatic */
  int64_t m;           /* svrg snapshot interval; <= 0: 2n */
  int64_t epochs;      /* budget of epochs (n component calls each) */
  uint64_t seed;
  int64_t trace_every; /* row cadence in iterations; <= 0: per epoch */
} saddlevr_solver_config;

SADDLEVR_API void saddlevr_solver_config_init(saddlevr_solver_config* cfg,
                                              int method);

typedef struct saddlevr_trace saddlevr_trace;

typedef struct saddlevr_trace_row {
  int64_t iter;
  int64_t grad_evals;
  double dist_sq;
  double lyapunov;   /* NaN when not tracked */
  double primal_gap; /* NaN when the problem has no primal metric */
  double wall_seconds;
} saddlevr_trace_row;

/* Runs the configured method from the origin.  On divergence the status is
 * SADDLEVR_ERR_DIVERGED and *out still receives the partial trace. */
SADDLEVR_API int saddlevr_solve(const saddlevr_problem* p,
                                const saddlevr_solver_config* cfg,
                                saddlevr_trace** out);

SADDLEVR_API void saddlevr_trace_free(saddlevr_trace* t);
SADDLEVR_API int64_t saddlevr_trace_rows(const saddlevr_trace* t);
SADDLEVR_API int saddlevr_trace_get_row(const saddlevr_trace* t, int64_t index,
                                    saddlevr_trace_row* out);
SADDLEVR_API double saddlevr_trace_gamma(const saddlevr_trace* t);
SADDLEVR_API double saddlevr_trace_tau(const saddlevr_trace* t);
SADDLEVR_API int saddlevr_trace_diverged(const saddlevr_trace* t);
SADDLEVR_API double saddlevr_trace_final_dist_sq(const saddlevr_trace* t);
SADDLEVR_API int64_t saddlevr_trace_final_grad_evals(const saddlevr_trace* t);

/* grad_evals at which the metric (0 = dist_sq, 1 = primal_gap) first reaches
 * the threshold; -1 when it never does. */
SADDLEVR_API int64_t saddlevr_trace_evals_to(const saddlevr_trace* t, int metric,
                                             double threshold);

/* Fitted per-iteration contraction factor of dist_sq after burn-in. */
SADDLEVR_API int saddlevr_trace_estimate_rate(const saddlevr_trace* t,
                                              double burn_in, double* alpha_hat);

/* Averaged iterates (non-smooth variant output only). */
SADDLEVR_API int saddlevr_trace_averaged(const saddlevr_trace* t, double* x,
                                         double* y);

SADDLEVR_API int saddlevr_trace_save_csv(const saddlevr_trace* t, const char* path);

/* ------------------------------------------------------------------ */
/* trajectories                                                        */
/* ------------------------------------------------------------------ */

enum {
  SADDLEVR_FEATURES_GAUSSIAN = 0,
  SADDLEVR_FEATURES_RANDOM_WALK = 1
};

SADDLEVR_API int saddlevr_batch_generate(uint64_t seed, int64_t n, int32_t d,
                                         double eta, int feature_model,
                                         double reward_noise,
                                         saddlevr_batch** out);
SADDLEVR_API int saddlevr_batch_load(const char* path, saddlevr_batch** out);
SADDLEVR_API int saddlevr_batch_save(const saddlevr_batch* b, const char* path);
SADDLEVR_API void saddlevr_batch_free(saddlevr_batch* b);
SADDLEVR_API int64_t saddlevr_batch_n(const saddlevr_batch* b);
SADDLEVR_API int32_t saddlevr_batch_d(const saddlevr_batch* b);
SADDLEVR_API double saddlevr_batch_eta(const saddlevr_batch* b);

/* ------------------------------------------------------------------ */
/* verification                                                        */
/* ------------------------------------------------------------------ */

typedef struct saddlevr_verify_options {
  int64_t trials;
  uint64_t seed;
  int negative_control; /* also run the oversized-step contraction suite */
} saddlevr_verify_options;

SADDLEVR_API void saddlevr_verify_options_init(saddlevr_verify_options* opts);

typedef struct saddlevr_verify_report saddlevr_verify_report;

SADDLEVR_API int saddlevr_verify_run(const saddlevr_verify_options* opts,
                                     saddlevr_verify_report** out);
SADDLEVR_API void saddlevr_verify_report_free(saddlevr_verify_report* r);
SADDLEVR_API int64_t saddlevr_verify_report_suites(const saddlevr_verify_report* r);
SADDLEVR_API const char* saddlevr_verify_suite_name(const saddlevr_verify_report* r,
                                                    int64_t i);
SADDLEVR_API int64_t saddlevr_verify_suite_trials(const saddlevr_verify_report* r,
                                                  int64_t i);
SADDLEVR_API int64_t saddlevr_verify_suite_failures(const saddlevr_verify_report* r,
                                                    int64_t i);
SADDLEVR_API double saddlevr_verify_suite_worst_slack(
    const saddlevr_verify_report* r, int64_t i);
SADDLEVR_API const char* saddlevr_verify_suite_detail(
    const saddlevr_verify_report* r, int64_t i);
SADDLEVR_API int saddlevr_verify_suite_is_negative_control(
    const saddlevr_verify_report* r, int64_t i);

/* 1 when every non-control suite is failure-free. */
SADDLEVR_API int saddlevr_verify_report_passed(const saddlevr_verify_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SADDLEVR_H */
