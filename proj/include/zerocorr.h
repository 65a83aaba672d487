/* zerocorr: scaling limits of zero correlations of Gaussian random
 * polynomials - closed-form limit pair-correlation functions, the Gaussian
 * log-integral reduction behind them, the projective ensemble, and an
 * empirical Monte Carlo pair-correlation pipeline.
 *
 * C API conventions:
 *   - every fallible call returns a zc_status code; ZC_OK is 0
 *   - zc_last_error() describes the most recent failure on this thread
 *   - complex data crosses the boundary as interleaved (re, im) doubles
 *   - handles (zc_point_sets, zc_curve) are opaque; destroy what you create
 *   - workers <= 0 means: ZEROCORR_WORKERS env var, else hardware threads;
 *     results are bit-identical for any worker count
 */
#ifndef ZEROCORR_H
#define ZEROCORR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZC_API __declspec(dllexport)
#else
#define ZC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int32_t zc_status;

#define ZC_OK 0
#define ZC_ERR_INVALID_ARGUMENT 1 /* malformed input / precondition violation */
#define ZC_ERR_DOMAIN 2           /* argument outside a function's domain */
#define ZC_ERR_RANK_DEFICIENT 3   /* coincident configuration in gram_to_xi */
#define ZC_ERR_NO_CONVERGENCE 4   /* iteration/quadrature missed tolerance */
#define ZC_ERR_OVERFLOW 5         /* count does not fit the result type */
#define ZC_ERR_INTERNAL 6

ZC_API const char* zc_version(void);
ZC_API const char* zc_status_name(zc_status code);
ZC_API const char* zc_last_error(void); /* thread-local message, never NULL */

/* ---- closed-form limit functions ------------------------------------- */

/* Hannay limit pair-correlation function, dimension one; t >= 0. */
ZC_API zc_status zc_hannay_h(double t, double* out);

/* Limit pair-correlation density in dimension m; t > 0 required for m > 1. */
ZC_API zc_status zc_gamma_m(int32_t m, double t, double* out);

/* m / pi. */
ZC_API zc_status zc_expected_density(int32_t m, double* out);

/* hannay_h(r^2/2) for m = 1, gamma_m(r^2/2) for m > 1; r > 0. */
ZC_API zc_status zc_limit_pair_density(int32_t m, double r, double* out);

/* Mass of the diagonal self-pair atom (pi for m = 1, 0 otherwise). */
ZC_API zc_status zc_pair_diagonal_atom(int32_t m, double* mass);

/* exp(-|z-w|^2/2); z, w interleaved length 2m. */
ZC_API zc_status zc_limit_kernel_modulus(int32_t m, const double* z, const double* w,
                                         double* out);

/* m log(1-e^{-r^2}) + r^2/(e^{r^2}-1), additive constant fixed to 0; r > 0. */
ZC_API zc_status zc_laplacian_g(int32_t m, double r, double* out);

/* Smooth part of the dimension-one radial bilaplacian of G; r > 0. */
ZC_API zc_status zc_bilaplacian_g(double r, double* out);

/* ---- Gaussian reduction ----------------------------------------------- */

/* Cholesky-type factor with positive real diagonal.  gram and xi are
 * row-major n x n interleaved complex; xi receives the lower-triangular
 * factor with zeros above the diagonal. */
ZC_API zc_status zc_gram_to_xi(int32_t n, const double* gram, double* xi);

/* Gram matrix of n unit vectors in C^d (vectors row-major n x d). */
ZC_API zc_status zc_gram_from_vectors(int32_t n, int32_t d, const double* vectors,
                                      double* gram);

/* Two-point Gaussian log-modulus integral G(cos theta) by adaptive 2-D
 * quadrature; cos_theta in [0,1].  err_estimate may be NULL. */
ZC_API zc_status zc_g2_quadrature(double cos_theta, double abs_tol, double* value,
                                  double* err_estimate);

typedef struct zc_mc_estimate {
    double value;
    double std_error; /* sample std / sqrt(samples) */
    uint64_t samples;
    uint64_t seed;
} zc_mc_estimate;

/* Reduced n-dimensional Monte Carlo estimate over a xi factor. */
ZC_API zc_status zc_gn_monte_carlo(int32_t n, const double* xi, uint64_t samples, uint64_t seed,
                                   int32_t workers, zc_mc_estimate* out);

/* Direct ambient-dimension Monte Carlo over n unit vectors in C^d. */
ZC_API zc_status zc_g_full_mc(int32_t n, int32_t d, const double* vectors, uint64_t samples,
                              uint64_t seed, int32_t workers, zc_mc_estimate* out);

/* ---- projective ensemble ---------------------------------------------- */

/* binomial(N+m, m). */
ZC_API zc_status zc_basis_dimension(int32_t m, int32_t degree, uint64_t* out);

/* Draw section coefficients; coeffs has 2 * basis_dimension doubles,
 * graded-lex multi-index order. */
ZC_API zc_status zc_sample_section(int32_t m, int32_t degree, uint64_t seed, uint64_t stream,
                                   double* coeffs);

/* Normalized degree-N kernel modulus; z, w interleaved length 2m. */
ZC_API zc_status zc_fs_cos_theta(int32_t m, int32_t degree, const double* z, const double* w,
                                 double* out);

/* Sup over lattice pairs of |cos theta_N at z/sqrt(N) - limit kernel|. */
ZC_API zc_status zc_szego_scaling_error(int32_t m, int32_t degree, double grid_radius,
                                        double grid_step, int32_t workers, double* out);

/* ---- zero statistics --------------------------------------------------- */

/* All roots of a degree-n polynomial (coefficients ascending, interleaved,
 * length 2(n+1)).  roots receives 2n doubles, residuals n backward errors,
 * clustered n flags (0/1); residuals/clustered may be NULL. */
ZC_API zc_status zc_find_roots(int32_t degree, const double* coeffs, double* roots,
                               double* residuals, uint8_t* clustered);

/* Collection of scaled point configurations (one per sample). */
typedef struct zc_point_sets zc_point_sets;

ZC_API zc_point_sets* zc_point_sets_create(void);
ZC_API void zc_point_sets_destroy(zc_point_sets* sets);
ZC_API size_t zc_point_sets_count(const zc_point_sets* sets);
ZC_API size_t zc_point_sets_total_points(const zc_point_sets* sets);

/* Append one configuration of `count` points (interleaved, 2*count). */
ZC_API zc_status zc_point_sets_add(zc_point_sets* sets, const double* points, size_t count);

/* Sample -> roots -> sqrt(N)-rescale -> clip, one configuration per stream
 * 0..samples-1. */
ZC_API zc_status zc_point_sets_sample_scaled_roots(zc_point_sets* sets, int32_t degree,
                                                   uint64_t samples, uint64_t seed,
                                                   double window_radius, int32_t workers);

/* Homogeneous Poisson baseline at the given intensity. */
ZC_API zc_status zc_point_sets_sample_poisson(zc_point_sets* sets, double intensity,
                                              uint64_t samples, uint64_t seed,
                                              double window_radius);

/* Radial table handle: (r, value, std_error) rows plus per-bin pair counts
 * and empty-bin flags. */
typedef struct zc_curve zc_curve;

ZC_API void zc_curve_destroy(zc_curve* curve);
ZC_API size_t zc_curve_size(const zc_curve* curve);
ZC_API zc_status zc_curve_row(const zc_curve* curve, size_t index, double* r, double* value,
                              double* std_error);
ZC_API zc_status zc_curve_pairs(const zc_curve* curve, size_t index, uint64_t* pair_count,
                                int32_t* empty_flag);
ZC_API zc_status zc_curve_density(const zc_curve* curve, double* density);

/* Translation-corrected pair-correlation estimate over n_edges-1 bins. */
ZC_API zc_status zc_pair_correlation(const zc_point_sets* sets, double window_radius,
                                     const double* edges, size_t n_edges, int32_t workers,
                                     zc_curve** out);

/* Mean count / window area with across-sample standard error. */
ZC_API zc_status zc_density_estimate(const zc_point_sets* sets, double window_radius,
                                     zc_mc_estimate* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ZEROCORR_H */
