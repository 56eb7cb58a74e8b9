#ifndef SAWI_SAWI_H
#define SAWI_SAWI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SAWI_API __declspec(dllexport)
#else
#define SAWI_API __attribute__((visibility("default")))
#endif

/* Status codes; values mirror sawi::ErrorCode. */
typedef enum sawi_status {
  SAWI_OK = 0,
  SAWI_INVALID_ARGUMENT = 1,
  SAWI_INVALID_ORDER = 2,
  SAWI_NON_CONVERGENCE = 3,
  SAWI_OUT_OF_SUPPORTED_RANGE = 4,
  SAWI_OUT_OF_REGION = 5,
  SAWI_ARITY_MISMATCH = 6,
  SAWI_QUADRATURE_FAILURE = 7,
  SAWI_CONTOUR_FAILURE = 8,
  SAWI_BRANCH_CUT = 9,
  SAWI_MIXED_BASE = 10,
  SAWI_NOT_INVERTIBLE = 11,
  SAWI_GRID_TOO_COARSE = 12,
  SAWI_SINGULAR_STEP = 13,
  SAWI_INTERNAL = 99
} sawi_status;

typedef struct sawi_complex {
  double re;
  double im;
} sawi_complex;

/* Static name of a status, e.g. "NonConvergence". */
SAWI_API const char* sawi_status_name(sawi_status status);

/* Message of the last failing call on the calling thread; "" after success.
   Valid until the next API call on the same thread. */
SAWI_API const char* sawi_last_error(void);

/* E^gamma_{alpha,rho}(z). tol <= 0 selects the default series tolerance.
   est_error and terms may be NULL. */
SAWI_API sawi_status sawi_ml3(double alpha, double rho, double gamma, sawi_complex z, double tol,
                              sawi_complex* value, double* est_error, int* terms);

/* ---- Cauchy problems ----
   Kinds: "advdisp", "advdisp-reg", "heat-reg", "heat-hp", "pointwise", "integro".
   Parameters are set by key; every kind takes alpha, rho, gamma, omega, nu and
   n-terms. Fourier kinds add sigma, k-max, k-nodes and either p, theta,
   lap-order (advdisp) or diffusivity (heat). pointwise adds lambda; integro adds
   lambda, delta, m-init, dt and a forcing expression. */
typedef struct sawi_problem sawi_problem;

SAWI_API sawi_status sawi_problem_create(const char* kind, sawi_problem** out);
SAWI_API void sawi_problem_destroy(sawi_problem* problem);

/* 1 when the problem's kind accepts key, 0 otherwise. */
SAWI_API int sawi_problem_accepts(const sawi_problem* problem, const char* key);

/* SAWI_INVALID_ARGUMENT for keys the kind does not accept. */
SAWI_API sawi_status sawi_problem_set(sawi_problem* problem, const char* key, double value);

/* Forcing of the integro kind: "const:c" (c), "exp:a" (e^{a t}) or "power:p" (t^p). */
SAWI_API sawi_status sawi_problem_set_forcing(sawi_problem* problem, const char* expr);

/* Solution at every (x, t) pair, x outer and t inner: out[i * nt + j] = psi(xs[i], ts[j]).
   The integro solution does not depend on x. truncation_warning (may be NULL)
   is set to 1 when any evaluation's series error estimate exceeds the warning ratio.
   SAWI_INVALID_ARGUMENT lists missing required keys. */
SAWI_API sawi_status sawi_solve(const sawi_problem* problem, const double* xs, size_t nx, const double* ts,
                                size_t nt, sawi_complex* out, int* truncation_warning);

/* ---- Validation suites ----
   suite: "ml", "sawi", "ops", "solutions" or "all". dt <= 0 and tol <= 0 keep the
   defaults; serial != 0 runs mode loops on the calling thread only. */
typedef struct sawi_report sawi_report;

SAWI_API sawi_status sawi_validate(const char* suite, double dt, double tol, int serial, sawi_report** out);
SAWI_API size_t sawi_report_size(const sawi_report* report);

/* Fields of check i; pointers stay valid until the report is destroyed.
   at_least != 0: the check passes when measured >= bound, else when measured < bound. */
SAWI_API sawi_status sawi_report_check(const sawi_report* report, size_t i, const char** name, double* measured,
                                       double* bound, int* at_least, int* pass, const char** note);
SAWI_API void sawi_report_destroy(sawi_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SAWI_SAWI_H */
