#ifndef CYCLOLAT_H
#define CYCLOLAT_H

/* Generated by cbindgen from cyclolat-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every call.
 */
typedef enum CycStatus {
  CYC_STATUS_OK = 0,
  CYC_STATUS_NULL_POINTER = 1,
  CYC_STATUS_INVALID_INPUT = 2,
  CYC_STATUS_BUDGET_EXCEEDED = 3,
  /**
   * No pipeline certifies the requested value at the configured budgets.
   */
  CYC_STATUS_UNAVAILABLE = 4,
  CYC_STATUS_PANIC = 5,
} CycStatus;

/**
 * Vertex matrix of a cyclotomic polytope C_m.
 */
typedef struct CycMatrix CycMatrix;

/**
 * Coordinator polynomial of a cyclotomic lattice.
 */
typedef struct CycPolynomial CycPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the vertex matrix of C_m and stores a handle in `out`.
 *
 * # Safety
 * `out` must be valid for writes. A non-null result must be released with
 * `cyc_matrix_free`.
 */
enum CycStatus cyc_build(uint64_t m, struct CycMatrix **out);

/**
 * Releases a matrix handle. Null is a no-op.
 *
 * # Safety
 * `matrix` must be null or a handle produced by `cyc_build` that has not
 * been freed already.
 */
void cyc_matrix_free(struct CycMatrix *matrix);

/**
 * Writes the row and column counts of the matrix.
 *
 * # Safety
 * All pointers must be valid; `matrix` must be a live handle.
 */
enum CycStatus cyc_matrix_dims(const struct CycMatrix *matrix, size_t *rows, size_t *cols);

/**
 * Writes one matrix entry.
 *
 * # Safety
 * All pointers must be valid; `matrix` must be a live handle.
 */
enum CycStatus cyc_matrix_entry(const struct CycMatrix *matrix,
                                size_t row,
                                size_t col,
                                int64_t *out);

/**
 * Writes the root-of-unity exponent that column `col` represents.
 *
 * # Safety
 * All pointers must be valid; `matrix` must be a live handle.
 */
enum CycStatus cyc_matrix_label(const struct CycMatrix *matrix, size_t col, uint64_t *out);

/**
 * Computes the coordinator polynomial of the cyclotomic lattice of order m,
 * routing through the cheapest certified pipeline. Returns `Unavailable`
 * and a null handle when no pipeline certifies the answer.
 *
 * # Safety
 * `out` must be valid for writes. A non-null result must be released with
 * `cyc_polynomial_free`.
 */
enum CycStatus cyc_coordinator(uint64_t m, struct CycPolynomial **out);

/**
 * Releases a polynomial handle. Null is a no-op.
 *
 * # Safety
 * `poly` must be null or a handle produced by `cyc_coordinator` that has
 * not been freed already.
 */
void cyc_polynomial_free(struct CycPolynomial *poly);

/**
 * Writes the degree of the polynomial, always phi(m).
 *
 * # Safety
 * All pointers must be valid; `poly` must be a live handle.
 */
enum CycStatus cyc_polynomial_degree(const struct CycPolynomial *poly, size_t *out);

/**
 * Writes coefficient k. Fails with `InvalidInput` when k exceeds the
 * degree or the exact value does not fit in 64 bits.
 *
 * # Safety
 * All pointers must be valid; `poly` must be a live handle.
 */
enum CycStatus cyc_polynomial_coeff(const struct CycPolynomial *poly, size_t k, int64_t *out);

/**
 * Returns the route that produced the polynomial as a static string, or
 * null for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle. The returned pointer must not be
 * freed.
 */
const char *cyc_polynomial_provenance(const struct CycPolynomial *poly);

/**
 * Counts lattice points by word length under the m vertex generators and
 * writes shells 0..=max_n into `counts`. `len` must be exactly max_n + 1.
 *
 * # Safety
 * `counts` must be valid for `len` writes.
 */
enum CycStatus cyc_growth(uint64_t m, size_t max_n, uint64_t *counts, size_t len);

/**
 * Writes 1 when the vertex matrix of C_m is totally unimodular, else 0.
 *
 * # Safety
 * `verdict` must be valid for writes.
 */
enum CycStatus cyc_tu(uint64_t m, int32_t *verdict);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CYCLOLAT_H */
