/* sasica: dependence criteria and model-based ICA for symmetric-alpha-stable
 * AR(1) processes.
 *
 * C interface over the C++ core. Objects are opaque handles released with
 * their *_free function; every fallible call returns sasica_status and
 * writes results through out-parameters. Handles are immutable after
 * creation and safe to share across threads.
 */

#ifndef SASICA_H
#define SASICA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SASICA_API __declspec(dllexport)
#else
#define SASICA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sasica_status {
  SASICA_OK = 0,
  SASICA_ERR_INVALID_ARGUMENT = 1,
  SASICA_ERR_NORMALIZATION = 2, /* pdf grid mass off by more than 1e-4 */
  SASICA_ERR_RANK_DEFICIENT = 3,
  SASICA_ERR_ROOT_BRACKET = 4,
  SASICA_ERR_ORTHONORMALITY = 5,
  SASICA_ERR_IO = 6,
  SASICA_ERR_INTERNAL = 7
} sasica_status;

SASICA_API const char* sasica_status_str(sasica_status status);
/* Message of the most recent failure on this thread ("" when none). */
SASICA_API const char* sasica_last_error(void);
SASICA_API const char* sasica_version(void);

/* ------------------------------------------------------------------ model */

typedef struct sasica_params {
  double alpha; /* stability exponent, (0, 2] */
  double kappa; /* decay rate, >= 0 */
  double T;     /* sampling period, > 0 */
  int32_t n;    /* signal length, >= 1 */
  double sigma; /* AWGN std for the MSE criterion, >= 0 */
} sasica_params;

SASICA_API void sasica_params_default(sasica_params* p);
SASICA_API sasica_status sasica_params_validate(const sasica_params* p);

/* ----------------------------------------------------------------- matrix */

typedef struct sasica_matrix sasica_matrix;

SASICA_API sasica_status sasica_matrix_create(int32_t rows, int32_t cols,
                                              const double* row_major,
                                              sasica_matrix** out);
SASICA_API int32_t sasica_matrix_rows(const sasica_matrix* m);
SASICA_API int32_t sasica_matrix_cols(const sasica_matrix* m);
/* Row-major contiguous storage, valid while the handle lives. */
SASICA_API const double* sasica_matrix_data(const sasica_matrix* m);
SASICA_API double sasica_matrix_get(const sasica_matrix* m, int32_t i,
                                    int32_t j);
SASICA_API sasica_status sasica_matrix_orthonormality_residual(
    const sasica_matrix* m, double* out);
SASICA_API void sasica_matrix_free(sasica_matrix* m);

/* CSV: one row per line, '.' decimal, 17-significant-digit round-trip.
 * Binary: magic "SDMAT001", u32 rows, u32 cols, row-major IEEE-754 LE f64. */
SASICA_API sasica_status sasica_matrix_write_csv(const sasica_matrix* m,
                                                 const char* path);
SASICA_API sasica_status sasica_matrix_read_csv(const char* path,
                                                sasica_matrix** out);
SASICA_API sasica_status sasica_matrix_write_bin(const sasica_matrix* m,
                                                 const char* path);
SASICA_API sasica_status sasica_matrix_read_bin(const char* path,
                                                sasica_matrix** out);

/* Mixing matrix L^{-1} (unit diagonal, det 1) and its bidiagonal inverse. */
SASICA_API sasica_status sasica_build_mixing(const sasica_params* p,
                                             sasica_matrix** out);
SASICA_API sasica_status sasica_build_whitening(const sasica_params* p,
                                                sasica_matrix** out);

/* AR(1) path from seed; samples and innovations are caller buffers of
 * length p->n. unit_dispersion != 0 draws unit-dispersion innovations,
 * otherwise the exponential-B-spline dispersion. */
SASICA_API sasica_status sasica_synthesize(const sasica_params* p,
                                           uint64_t seed,
                                           int unit_dispersion,
                                           double* samples,
                                           double* innovations);

/* ----------------------------------------------------------------- stable */

/* e^{-|c omega|^alpha} */
SASICA_API sasica_status sasica_charfun(double alpha, double c, double omega,
                                        double* out);

/* n iid SaS draws (Chambers-Mallows-Stuck), deterministic in seed. */
SASICA_API sasica_status sasica_sample_sas(double alpha, double c, size_t n,
                                           uint64_t seed, double* out);

typedef struct sasica_pdf_grid sasica_pdf_grid;

/* FFT-sampled marginal pdf of hbar*w + N(0, sigma^2) with derivative orders
 * 0..max_order (max 3). Pass m = 0 and x_max = 0 for the default grid
 * policy. Fails with SASICA_ERR_NORMALIZATION when the grid truncates more
 * than 1e-4 of mass. */
SASICA_API sasica_status sasica_pdf_grid_create(double hbar, double alpha,
                                                double sigma, int max_order,
                                                int m, double x_max,
                                                sasica_pdf_grid** out);
SASICA_API int32_t sasica_pdf_grid_size(const sasica_pdf_grid* g);
SASICA_API double sasica_pdf_grid_x0(const sasica_pdf_grid* g);
SASICA_API double sasica_pdf_grid_dx(const sasica_pdf_grid* g);
SASICA_API double sasica_pdf_grid_mass(const sasica_pdf_grid* g);
/* Samples of p^(order); NULL when order exceeds max_order. */
SASICA_API const double* sasica_pdf_grid_values(const sasica_pdf_grid* g,
                                                int order);
/* Columns x,p0,p1,p2,p3 (up to max_order). */
SASICA_API sasica_status sasica_pdf_grid_write_csv(const sasica_pdf_grid* g,
                                                   const char* path);
SASICA_API void sasica_pdf_grid_free(sasica_pdf_grid* g);

/* Scalar MMSE of estimating u*w from u*w + N(0, sigma^2); in [0, sigma^2]. */
SASICA_API sasica_status sasica_nu(double u, double alpha, double sigma,
                                   double* out);

/* ------------------------------------------------------------- transforms */

SASICA_API sasica_status sasica_identity(int32_t n, sasica_matrix** out);
SASICA_API sasica_status sasica_dct(int32_t n, sasica_matrix** out);
SASICA_API sasica_status sasica_haar(int32_t n, sasica_matrix** out);
SASICA_API sasica_status sasica_opwav(const sasica_params* p,
                                      sasica_matrix** out);
/* Exact KLT of the model covariance; requires kappa > 0. */
SASICA_API sasica_status sasica_klt(const sasica_params* p,
                                    sasica_matrix** out);

/* --------------------------------------------------------------- criteria */

typedef enum sasica_criterion {
  SASICA_CRITERION_R = 0,
  SASICA_CRITERION_MSE = 1
} sasica_criterion;

typedef struct sasica_report sasica_report;

/* hbar_n of H L^{-1}; out is a caller buffer of length rows(H). */
SASICA_API sasica_status sasica_row_alpha_norms(const sasica_matrix* H,
                                                const sasica_matrix* Linv,
                                                double alpha, double* out);
SASICA_API sasica_status sasica_redundancy(const sasica_matrix* H,
                                           const sasica_matrix* Linv,
                                           double alpha, int with_gradient,
                                           sasica_report** out);
SASICA_API sasica_status sasica_mse(const sasica_matrix* H,
                                    const sasica_matrix* Linv, double alpha,
                                    double sigma, int with_gradient,
                                    sasica_report** out);
SASICA_API double sasica_report_value(const sasica_report* r);
SASICA_API int32_t sasica_report_size(const sasica_report* r);
SASICA_API const double* sasica_report_hbars(const sasica_report* r);
SASICA_API int sasica_report_kind(const sasica_report* r);
/* 1 when the alpha < 1 subgradient clamp was hit somewhere. */
SASICA_API int sasica_report_gradient_singular(const sasica_report* r);
/* Copies the gradient; SASICA_ERR_INVALID_ARGUMENT when absent. */
SASICA_API sasica_status sasica_report_gradient(const sasica_report* r,
                                                sasica_matrix** out);
SASICA_API sasica_status sasica_report_write_csv(const sasica_report* r,
                                                 const char* path);
SASICA_API void sasica_report_free(sasica_report* r);

/* -------------------------------------------------------------- optimizer */

typedef enum sasica_init {
  SASICA_INIT_IDENTITY = 0,
  SASICA_INIT_DCT = 1,
  SASICA_INIT_HAAR = 2,
  SASICA_INIT_OPWAV = 3,
  SASICA_INIT_RANDOM = 4
} sasica_init;

typedef struct sasica_opt_options {
  double mu0;      /* initial step, > 0 */
  double a;        /* step growth on accept, >= 1 */
  double b;        /* step shrink on reject, [0, 1] */
  int64_t max_iters;
  double tol;      /* decrease threshold over 50 accepted steps */
  int init;        /* sasica_init */
  uint64_t seed;   /* random-orthogonal init seed */
  int starts;      /* multistart count (random init only) */
  int smooth_continuation; /* anneal gradient smoothing for alpha <= 1 */
} sasica_opt_options;

SASICA_API void sasica_opt_options_default(sasica_opt_options* o);

typedef struct sasica_opt_result sasica_opt_result;

/* Nearest orthogonal matrix (Frobenius), U V^T of the SVD. */
SASICA_API sasica_status sasica_project_unitary(const sasica_matrix* a,
                                                sasica_matrix** out);
SASICA_API sasica_status sasica_optimize(const sasica_params* p,
                                         sasica_criterion criterion,
                                         const sasica_opt_options* o,
                                         sasica_opt_result** out);
SASICA_API double sasica_opt_result_value(const sasica_opt_result* r);
SASICA_API int64_t sasica_opt_result_iterations(const sasica_opt_result* r);
SASICA_API int sasica_opt_result_converged(const sasica_opt_result* r);
SASICA_API sasica_status sasica_opt_result_matrix(const sasica_opt_result* r,
                                                  sasica_matrix** out);
SASICA_API int64_t sasica_opt_result_trace_len(const sasica_opt_result* r);
SASICA_API sasica_status sasica_opt_result_trace_get(
    const sasica_opt_result* r, int64_t i, int64_t* iter, double* value,
    double* mu, int* accepted);
SASICA_API sasica_status sasica_opt_result_trace_write_csv(
    const sasica_opt_result* r, const char* path);
SASICA_API void sasica_opt_result_free(sasica_opt_result* r);

/* Greedy row alignment; permutation/signs may be NULL, else length rows(H). */
SASICA_API sasica_status sasica_match_basis(const sasica_matrix* H,
                                            const sasica_matrix* Href,
                                            double* distance,
                                            int32_t* permutation,
                                            double* signs);

/* ------------------------------------------------------------ asymptotics */

typedef struct sasica_gamma_seq sasica_gamma_seq;

SASICA_API sasica_status sasica_gamma_sequence(double kappa, double T,
                                               double alpha, int k,
                                               sasica_gamma_seq** out);
SASICA_API int32_t sasica_gamma_seq_depth(const sasica_gamma_seq* g);
/* Atom of weight 2^{-k}, k in [1, depth]. */
SASICA_API sasica_status sasica_gamma_seq_get(const sasica_gamma_seq* g,
                                              int32_t k, double* gamma,
                                              double* weight);
SASICA_API double sasica_gamma_seq_scaling(const sasica_gamma_seq* g);
SASICA_API void sasica_gamma_seq_free(sasica_gamma_seq* g);

SASICA_API sasica_status sasica_limit_r_opwt(double kappa, double T,
                                             double alpha, int k,
                                             double* value,
                                             double* tail_bound);
SASICA_API sasica_status sasica_limit_mse_opwt(double kappa, double T,
                                               double alpha, double sigma,
                                               int k, double* value,
                                               double* tail_bound);

/* kind: 0 = continuous density on [1-rho, 1+rho] (alpha = 2),
 *       1 = point mass at zero (alpha < 2). */
SASICA_API sasica_status sasica_limit_spectrum(double kappa, double T,
                                               double alpha, int* kind,
                                               double* lo, double* hi);
SASICA_API sasica_status sasica_limit_spectrum_density(double kappa, double T,
                                                       double alpha,
                                                       double gamma,
                                                       double* out);

typedef struct sasica_theorem1 sasica_theorem1;

SASICA_API sasica_status sasica_theorem1_run(double kappa, double T,
                                             double alpha, double sigma,
                                             const int32_t* n_list,
                                             int32_t n_count,
                                             sasica_theorem1** out);
SASICA_API int32_t sasica_theorem1_rows(const sasica_theorem1* t);
SASICA_API sasica_status sasica_theorem1_get(const sasica_theorem1* t,
                                             int32_t i, int32_t* n,
                                             double* r_dct, double* r_opwt,
                                             double* mse_dct,
                                             double* mse_opwt);
SASICA_API void sasica_theorem1_bounds(const sasica_theorem1* t,
                                       double* r_opwt_bound,
                                       double* mse_opwt_bound);
/* r_dct_increasing, r_opwt_bounded, mse_dct_increasing, mse_opwt_bounded */
SASICA_API void sasica_theorem1_flags(const sasica_theorem1* t,
                                      int* r_dct_increasing,
                                      int* r_opwt_bounded,
                                      int* mse_dct_increasing,
                                      int* mse_opwt_bounded);
SASICA_API void sasica_theorem1_free(sasica_theorem1* t);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SASICA_H */
