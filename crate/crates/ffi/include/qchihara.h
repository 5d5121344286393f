#ifndef QCHIHARA_H
#define QCHIHARA_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Variable order used by [`qch_poly_eval`].
#define QCH_NVARS 7

// Which polynomial family [`qch_poly_family`] builds.
typedef enum QchFamily {
  // `H_n(x|q)`
  QCH_FAMILY_HERMITE = 0,
  // `B_n(x|q)`
  QCH_FAMILY_B = 1,
  // `p_n(x|q,a,b)` with symbolic `a`, `b`.
  QCH_FAMILY_AL_SALAM_CHIHARA = 2,
} QchFamily;

// Result codes.
typedef enum QchStatus {
  QCH_STATUS_OK = 0,
  // A required pointer was null.
  QCH_STATUS_NULL_POINTER = 1,
  // Argument outside the documented range, or a string that is not UTF-8.
  QCH_STATUS_INVALID_ARGUMENT = 2,
  // Parameters outside the domain of the requested object.
  QCH_STATUS_DOMAIN = 3,
  // An iteration or quadrature did not converge.
  QCH_STATUS_CONVERGENCE = 4,
  // A linear system was singular.
  QCH_STATUS_SINGULAR = 5,
  // Exact arithmetic failed where it must not (division with remainder).
  QCH_STATUS_ARITHMETIC = 6,
  // A verification suite ran and at least one check failed.
  QCH_STATUS_CHECK_FAILED = 7,
  // A Rust panic was caught at the boundary.
  QCH_STATUS_INTERNAL = 8,
} QchStatus;

// Discrete solution for `q > 1`, `rho = +-q^(-m/2)`.
typedef struct QchDiscreteMeasure QchDiscreteMeasure;

// Exact polynomial over the rationals in the variables `q, x, a, b, c, rho, y`.
typedef struct QchPoly QchPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *qch_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *qch_version(void);

// # Safety
// `s` must come from this library and not have been freed.
void qch_string_free(char *s);

// Degree-`n` member of `family`, exact in its symbols.
//
// # Safety
// `out` must be a valid pointer to writable storage.
enum QchStatus qch_poly_family(enum QchFamily family, uint32_t n, struct QchPoly **out);

// # Safety
// `a`, `b` must be live handles and `out` writable.
enum QchStatus qch_poly_mul(const struct QchPoly *a, const struct QchPoly *b, struct QchPoly **out);

// # Safety
// `a`, `b` must be live handles and `out` writable.
enum QchStatus qch_poly_sub(const struct QchPoly *a, const struct QchPoly *b, struct QchPoly **out);

// Writes 1 to `out` if `p` is the zero polynomial, else 0.
//
// # Safety
// `p` must be a live handle and `out` writable.
enum QchStatus qch_poly_is_zero(const struct QchPoly *p, int *out);

// Canonical text form, e.g. `-q^2 + x^2`. Free with [`qch_string_free`].
//
// # Safety
// `p` must be a live handle and `out` writable.
enum QchStatus qch_poly_render(const struct QchPoly *p, char **out);

// Evaluate at `values[0..7]`, in the order `q, x, a, b, c, rho, y`.
//
// # Safety
// `p` must be a live handle, `values` must point to 7 doubles and `out`
// must be writable.
enum QchStatus qch_poly_eval(const struct QchPoly *p, const double *values, double *out);

// # Safety
// `p` must be NULL or a handle not yet freed.
void qch_poly_free(struct QchPoly *p);

// q-Hermite weight at `x`; 0 outside the support. Needs `|q| < 1`.
//
// # Safety
// `out` must be writable.
enum QchStatus qch_density_qhermite(double x, double q, double *out);

// Density of `mu(dx|rho,y)`. Needs `|q| < 1`, `|rho| < 1`, `y^2(1-q) < 4`.
//
// # Safety
// `out` must be writable.
enum QchStatus qch_density_mu(double x, double rho, double y, double q, double *out);

// Al-Salam-Chihara weight. Needs `|q| < 1`, `0 < b < 1`, `a^2(1-q) < 4b`.
//
// # Safety
// `out` must be writable.
enum QchStatus qch_density_asc(double x, double a, double b, double q, double *out);

// Poisson-Mehler kernel from its product form.
//
// # Safety
// `out` must be writable.
enum QchStatus qch_poisson_mehler(double x, double y, double rho, double q, double *out);

// Build the `(m+1)`-point measure; `negative_rho != 0` selects `rho < 0`.
//
// # Safety
// `out` must be writable.
enum QchStatus qch_discrete_measure_new(double q,
                                        uint32_t m,
                                        double y,
                                        int negative_rho,
                                        struct QchDiscreteMeasure **out);

// Number of support points, or 0 for a null handle.
//
// # Safety
// `h` must be NULL or a live handle.
size_t qch_discrete_measure_len(const struct QchDiscreteMeasure *h);

// Copy support points and weights into caller buffers of length `len`,
// which must be at least [`qch_discrete_measure_len`].
//
// # Safety
// `h` must be a live handle; `support` and `weights` must each hold `len`
// doubles.
enum QchStatus qch_discrete_measure_copy(const struct QchDiscreteMeasure *h,
                                         double *support,
                                         double *weights,
                                         size_t len);

// JSON form of the measure. Free with [`qch_string_free`].
//
// # Safety
// `h` must be a live handle and `out` writable.
enum QchStatus qch_discrete_measure_to_json(const struct QchDiscreteMeasure *h, char **out);

// # Safety
// `h` must be NULL or a handle not yet freed.
void qch_discrete_measure_free(struct QchDiscreteMeasure *h);

// Run a verification suite (`"identities"`, `"hankel"`, `"measures"`,
// `"discrete"` or `"all"`) and return its records as a JSON array.
// `n_max <= 0` keeps the default bounds. Returns `CheckFailed` when the
// suite ran but some check failed; `json_out` is filled in either case.
//
// # Safety
// `suite` must be a NUL-terminated string and `json_out` writable.
enum QchStatus qch_verify_suite(const char *suite, int64_t n_max, char **json_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCHIHARA_H */
