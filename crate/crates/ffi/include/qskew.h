#ifndef QSKEW_H
#define QSKEW_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QskStatus {
  QSK_STATUS_OK = 0,
  QSK_STATUS_NULL_POINTER = 1,
  QSK_STATUS_INVALID_ARGUMENT = 2,
  QSK_STATUS_DIMENSION_MISMATCH = 3,
  QSK_STATUS_BUFFER_TOO_SMALL = 4,
  QSK_STATUS_NOT_HERMITIAN = 5,
  QSK_STATUS_NOT_SKEW_SYMMETRIC = 6,
  QSK_STATUS_SINGULAR = 7,
  QSK_STATUS_NO_CONVERGENCE = 8,
  /**
   * Spectral structure check failed (pairing, cluster parity, adjoint form).
   */
  QSK_STATUS_STRUCTURE = 9,
  QSK_STATUS_ZERO_MATRIX = 10,
  QSK_STATUS_PANIC = 11,
} QskStatus;

typedef enum QskSkewCase {
  QSK_SKEW_CASE_DEGENERATE = 0,
  QSK_SKEW_CASE_SOLID = 1,
} QskSkewCase;

/**
 * Opaque complex matrix.
 */
typedef struct QskComplexMatrix QskComplexMatrix;

/**
 * Opaque quaternion matrix.
 */
typedef struct QskQuatMatrix QskQuatMatrix;

/**
 * Classification of a 3×3 skew-symmetric matrix with its verified spectrum.
 */
typedef struct QskSpectrumReport {
  enum QskSkewCase case_label;
  /**
   * `(0, s, s)` when degenerate, zeros when solid.
   */
  double predicted_values[3];
  /**
   * Ascending right eigenvalues of `Z Z*`.
   */
  double computed_values[3];
  double max_deviation;
  double condition_gap;
  bool agrees;
} QskSpectrumReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qsk_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `len > 0`). Returns the full message length
 * excluding the terminator, or 0 if the last call succeeded.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes.
 */
size_t qsk_last_error_message(char *buf, size_t len);

/**
 * Creates a `rows×cols` quaternion matrix from `4·rows·cols` doubles.
 *
 * # Safety
 * `data` must point to `4·rows·cols` doubles; `out_matrix` must be writable.
 */
enum QskStatus qsk_quat_matrix_new(size_t rows,
                                   size_t cols,
                                   const double *data,
                                   struct QskQuatMatrix **out_matrix);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void qsk_quat_matrix_free(struct QskQuatMatrix *m);

/**
 * # Safety
 * `m` must be a live handle; `rows` and `cols` must be writable.
 */
enum QskStatus qsk_quat_matrix_shape(const struct QskQuatMatrix *m, size_t *rows, size_t *cols);

/**
 * Copies all entries (`4·rows·cols` doubles, row-major) into `buf`.
 *
 * # Safety
 * `m` must be a live handle; `buf` must be valid for `len` doubles.
 */
enum QskStatus qsk_quat_matrix_entries(const struct QskQuatMatrix *m, double *buf, size_t len);

/**
 * Creates a `rows×cols` complex matrix from `2·rows·cols` doubles.
 *
 * # Safety
 * `data` must point to `2·rows·cols` doubles; `out_matrix` must be writable.
 */
enum QskStatus qsk_complex_matrix_new(size_t rows,
                                      size_t cols,
                                      const double *data,
                                      struct QskComplexMatrix **out_matrix);

/**
 * # Safety
 * `m` must be null or a handle from this library not yet freed.
 */
void qsk_complex_matrix_free(struct QskComplexMatrix *m);

/**
 * # Safety
 * `m` must be a live handle; `rows` and `cols` must be writable.
 */
enum QskStatus qsk_complex_matrix_shape(const struct QskComplexMatrix *m,
                                        size_t *rows,
                                        size_t *cols);

/**
 * Copies all entries (`2·rows·cols` doubles, row-major) into `buf`.
 *
 * # Safety
 * `m` must be a live handle; `buf` must be valid for `len` doubles.
 */
enum QskStatus qsk_complex_matrix_entries(const struct QskComplexMatrix *m,
                                          double *buf,
                                          size_t len);

/**
 * `W = Z Z*` for a skew-symmetric `Z`.
 *
 * # Safety
 * `z` must be a live handle; `out_w` must be writable.
 */
enum QskStatus qsk_gram_product(const struct QskQuatMatrix *z,
                                double tol,
                                struct QskQuatMatrix **out_w);

/**
 * Ascending right eigenvalues of a Hermitian quaternion matrix, written to
 * `values[0..n]`.
 *
 * # Safety
 * `a` must be a live handle; `values` must be valid for `len` doubles.
 */
enum QskStatus qsk_right_eigenvalues(const struct QskQuatMatrix *a,
                                     double tol,
                                     double *values,
                                     size_t len);

/**
 * Whether `Z Z*` is positive definite.
 *
 * # Safety
 * `z` must be a live handle; `result` must be writable.
 */
enum QskStatus qsk_is_solid(const struct QskQuatMatrix *z, double tol, bool *result);

/**
 * Classifies a nonzero 3×3 skew-symmetric matrix and verifies the predicted
 * spectrum.
 *
 * # Safety
 * `z` must be a live handle; `report` must be writable.
 */
enum QskStatus qsk_classify_3x3(const struct QskQuatMatrix *z,
                                double tol,
                                struct QskSpectrumReport *report);

/**
 * Inverts a skew-symmetric quaternion matrix. When singular, `invertible` is
 * false, `*out_inverse` is null and `skew_deviation` is NaN. Otherwise
 * `skew_deviation` is `max |X + Xᵀ|` of the inverse `X`. `out_inverse` may be
 * null when the inverse itself is not needed.
 *
 * # Safety
 * `z` must be a live handle; `invertible` and `skew_deviation` must be
 * writable; `out_inverse` must be null or writable.
 */
enum QskStatus qsk_inverse_skew_report(const struct QskQuatMatrix *z,
                                       double tol,
                                       bool *invertible,
                                       double *skew_deviation,
                                       struct QskQuatMatrix **out_inverse);

/**
 * Canonical form `U Z Uᵀ = Σ` of a complex skew-symmetric `Z`. Writes the
 * descending `σ` values to `sigmas` (needs `n/2` slots), their count to
 * `sigma_count`, the kernel dimension to `zero_dim`, the reconstruction
 * residual to `residual`, and the unitary `U` to `*out_u`.
 *
 * # Safety
 * `z` must be a live handle; `sigmas` must be valid for `len` doubles; the
 * remaining output pointers must be writable.
 */
enum QskStatus qsk_hua_decompose(const struct QskComplexMatrix *z,
                                 double tol,
                                 double *sigmas,
                                 size_t len,
                                 size_t *sigma_count,
                                 size_t *zero_dim,
                                 double *residual,
                                 struct QskComplexMatrix **out_u);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QSKEW_H */
