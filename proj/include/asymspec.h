/*
 * asymspec — spectral asymmetry toolkit for the Schrödinger operator
 * -u'' + q(x) u = lambda u on [0,1].
 *
 * C interface of the shared library.  All functions are thread-safe on
 * distinct handles and reentrant on shared ones (the underlying objects are
 * immutable).  Every fallible call returns an asymspec_status; on failure a
 * human-readable message is available from asymspec_last_error() until the
 * next failing call on the same thread.
 */

#ifndef ASYMSPEC_H
#define ASYMSPEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef ASYMSPEC_API
#  if defined(_WIN32)
#    ifdef ASYMSPEC_BUILD
#      define ASYMSPEC_API __declspec(dllexport)
#    else
#      define ASYMSPEC_API __declspec(dllimport)
#    endif
#  else
#    define ASYMSPEC_API __attribute__((visibility("default")))
#  endif
#endif

typedef enum asymspec_status {
  ASYMSPEC_OK = 0,
  ASYMSPEC_ERR_DOMAIN = 1,       /* argument outside its mathematical domain */
  ASYMSPEC_ERR_ARGUMENT = 2,     /* invalid sizes/combinations */
  ASYMSPEC_ERR_CONVERGENCE = 3,  /* iteration failed; message names the index */
  ASYMSPEC_ERR_POLE = 4,         /* too close to a Dirichlet eigenvalue */
  ASYMSPEC_ERR_INCONSISTENT = 5, /* cross-checked quantities disagree */
  ASYMSPEC_ERR_PRECONDITION = 6, /* message says how to fix the input */
  ASYMSPEC_ERR_PARSE = 7,        /* malformed JSON input */
  ASYMSPEC_ERR_UNKNOWN = 8
} asymspec_status;

typedef struct asymspec_potential asymspec_potential; /* q in L^2[0,1] */
typedef struct asymspec_triple asymspec_triple;       /* Dirichlet spectral data */
typedef struct asymspec_sampled asymspec_sampled;     /* function sampled on a spectrum */
typedef struct asymspec_report asymspec_report;       /* reconstruction report */

ASYMSPEC_API const char* asymspec_version(void);
ASYMSPEC_API const char* asymspec_last_error(void);

/* Frees strings returned through char** out parameters. */
ASYMSPEC_API void asymspec_string_free(char* s);

/* ---- potentials ------------------------------------------------------- */

/* JSON forms: {"basis":"fourier","mean":m,"cos":[...],"sin":[...]},
 * {"basis":"grid","values":[...]}, {"basis":"piecewise","values":[...]}.
 * Unknown fields are rejected. */
ASYMSPEC_API asymspec_status asymspec_potential_parse_json(const char* text, asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_to_json(const asymspec_potential* q, char** out);

ASYMSPEC_API asymspec_status asymspec_potential_fourier(double mean, const double* cos_coeffs, size_t n_cos,
                                           const double* sin_coeffs, size_t n_sin,
                                           asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_grid(const double* values, size_t n, asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_piecewise(const double* values, size_t n,
                                             asymspec_potential** out);
ASYMSPEC_API void asymspec_potential_free(asymspec_potential* q);

ASYMSPEC_API asymspec_status asymspec_potential_eval(const asymspec_potential* q, double x, double* out);
ASYMSPEC_API asymspec_status asymspec_potential_reflect(const asymspec_potential* q, asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_odd_part(const asymspec_potential* q, asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_shift(const asymspec_potential* q, double delta,
                                         asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_potential_l2_norm(const asymspec_potential* q, double* out);
ASYMSPEC_API asymspec_status asymspec_potential_l2_distance(const asymspec_potential* a,
                                               const asymspec_potential* b, double* out);

/* ---- fundamental solutions -------------------------------------------- */

/* c(1,lambda), c'(1,lambda), s(1,lambda), s'(1,lambda) and their
 * lambda-derivatives.  steps = 0 selects the automatic grid. */
typedef struct asymspec_fundamental_data {
  double lambda_re, lambda_im;
  double c1_re, c1_im, dc1_re, dc1_im;
  double s1_re, s1_im, ds1_re, ds1_im;
  double c1_dl_re, c1_dl_im, dc1_dl_re, dc1_dl_im;
  double s1_dl_re, s1_dl_im, ds1_dl_re, ds1_dl_im;
  size_t steps;
} asymspec_fundamental_data;

ASYMSPEC_API asymspec_status asymspec_fundamental(const asymspec_potential* q, double lambda_re,
                                     double lambda_im, size_t steps,
                                     asymspec_fundamental_data* out);

/* Number of Dirichlet eigenvalues strictly below real lambda. */
ASYMSPEC_API asymspec_status asymspec_prufer_count(const asymspec_potential* q, double lambda, size_t steps,
                                      int* out);

/* ---- spectral data ----------------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_spectral_triple(const asymspec_potential* q, size_t n_max,
                                         asymspec_triple** out);
ASYMSPEC_API asymspec_status asymspec_triple_parse_json(const char* text, asymspec_triple** out);
ASYMSPEC_API asymspec_status asymspec_triple_to_json(const asymspec_triple* t, char** out);
ASYMSPEC_API void asymspec_triple_free(asymspec_triple* t);

ASYMSPEC_API size_t asymspec_triple_size(const asymspec_triple* t);
ASYMSPEC_API asymspec_status asymspec_triple_c(const asymspec_triple* t, double* out);
/* Copies up to cap entries into buf and stores the full length in *len.
 * field is one of "mu", "sigma", "kappa", "alpha", "norming". */
ASYMSPEC_API asymspec_status asymspec_triple_sequence(const asymspec_triple* t, const char* field, double* buf,
                                         size_t cap, size_t* len);

ASYMSPEC_API asymspec_status asymspec_estimate_mean(const double* mu, size_t n, double* out);

/* Shift delta >= 0 making q + delta satisfy mu_1 > 0, s(1,0) != 0,
 * s'(1,0) != 0 (required by the sampling identities). */
ASYMSPEC_API asymspec_status asymspec_admissible_shift(const asymspec_potential* q, double* out);

/* ---- asymmetry function ------------------------------------------------ */

ASYMSPEC_API asymspec_status asymspec_asym_eval(const asymspec_potential* q, double lambda_re, double lambda_im,
                                   size_t steps, double* out_re, double* out_im);
ASYMSPEC_API asymspec_status asymspec_asym_leading(const asymspec_potential* q, int n, double* out);

/* Dirichlet-to-Neumann matrix at lambda, row-major [re,im] pairs:
 * out[0..1]=N00, out[2..3]=N01, out[4..5]=N10, out[6..7]=N11. */
ASYMSPEC_API asymspec_status asymspec_dtn(const asymspec_potential* q, double lambda_re, double lambda_im,
                             size_t steps, double out[8]);

/* Max Frobenius norm of the DtN commutator over the grid; pole-adjacent grid
 * points are skipped and counted in *skipped. */
ASYMSPEC_API asymspec_status asymspec_dtn_commutator_norm(const asymspec_potential* q1,
                                             const asymspec_potential* q2, const double* grid,
                                             size_t n, double* out_max, size_t* skipped);

ASYMSPEC_API asymspec_status asymspec_property4_residual(const asymspec_potential* q, double lambda_re,
                                            double lambda_im, size_t steps, double* out);

/* is_symmetric != 0 iff max |a| < 1e-8 over the probe grid. */
ASYMSPEC_API asymspec_status asymspec_symmetry_test(const asymspec_potential* q, size_t grid_size,
                                       int* is_symmetric, double* max_abs_a);

/* ---- sampling / interpolation ------------------------------------------ */

ASYMSPEC_API asymspec_status asymspec_e_function(const asymspec_potential* q, double omega_re, double omega_im,
                                    double* out_re, double* out_im);
ASYMSPEC_API asymspec_status asymspec_kernel_one(const asymspec_potential* q, double alpha_re, double alpha_im,
                                    double beta_re, double beta_im, double* out_re,
                                    double* out_im);

ASYMSPEC_API asymspec_status asymspec_sampled_create(const double* nodes, const double* weights,
                                        const double* samples, size_t n, asymspec_sampled** out);
/* nodes and weights from the spectrum of node_potential, samples from the
 * asymmetry function of sample_potential. */
ASYMSPEC_API asymspec_status asymspec_sampled_from_potentials(const asymspec_potential* node_potential,
                                                 const asymspec_potential* sample_potential,
                                                 size_t count, asymspec_sampled** out);
ASYMSPEC_API void asymspec_sampled_free(asymspec_sampled* s);

/* Interpolates the sampled function at lambda from its first J samples
 * (J = 0 uses all); *tail estimates the dropped remainder. */
ASYMSPEC_API asymspec_status asymspec_interpolate(const asymspec_sampled* s,
                                     const asymspec_potential* node_potential, double lambda,
                                     size_t J, double* value, double* tail);

ASYMSPEC_API asymspec_status asymspec_k_kernel(int n, int j, double c_n, double* out);
ASYMSPEC_API asymspec_status asymspec_k_kernel_product(int n, int j, double c_n, size_t factors, double* out);

/* alpha_n = a(pi^2 n^2 + c + sigma_n) from samples a_j at pi^2 j^2;
 * alpha and tail must hold n_sigma entries. */
ASYMSPEC_API asymspec_status asymspec_resample(const double* a, size_t n_a, double c, const double* sigma,
                                  size_t n_sigma, double* alpha, double* tail);

/* ---- reconstruction ----------------------------------------------------- */

ASYMSPEC_API asymspec_status asymspec_reconstruct(const double* mu, const double* alpha, size_t n_fit,
                                     size_t n_modes, double tol, size_t max_iter,
                                     asymspec_report** out);
ASYMSPEC_API asymspec_status asymspec_isospectral_partner(const asymspec_potential* p, const double* new_alpha,
                                             size_t n, size_t n_modes, double tol,
                                             size_t max_iter, asymspec_report** out);
ASYMSPEC_API void asymspec_report_free(asymspec_report* r);

ASYMSPEC_API asymspec_status asymspec_report_recovered(const asymspec_report* r, asymspec_potential** out);
ASYMSPEC_API asymspec_status asymspec_report_converged(const asymspec_report* r, int* out);
ASYMSPEC_API asymspec_status asymspec_report_iterations(const asymspec_report* r, size_t* out);
ASYMSPEC_API asymspec_status asymspec_report_residuals(const asymspec_report* r, double* buf, size_t cap,
                                          size_t* len);
ASYMSPEC_API asymspec_status asymspec_report_final_residuals(const asymspec_report* r, double* mu_residual,
                                                double* alpha_residual);
ASYMSPEC_API asymspec_status asymspec_report_to_json(const asymspec_report* r, char** out);

/* Forward map, reconstruction, and the L^2 distance back to q. */
ASYMSPEC_API asymspec_status asymspec_verify_roundtrip(const asymspec_potential* q, size_t n_fit,
                                          size_t n_modes, double* l2_error, int* passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ASYMSPEC_H */
