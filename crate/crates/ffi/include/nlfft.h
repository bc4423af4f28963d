#ifndef NLFFT_H
#define NLFFT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call. The nonzero values match the exit
 * codes of the command line tool where they overlap.
 */
typedef enum NlfftStatus {
  NLFFT_STATUS_OK = 0,
  NLFFT_STATUS_INVALID_INPUT = 2,
  NLFFT_STATUS_NUMERICAL_FAILURE = 3,
  NLFFT_STATUS_IO = 4,
  NLFFT_STATUS_NULL_POINTER = 5,
  NLFFT_STATUS_BUFFER_TOO_SMALL = 6,
  NLFFT_STATUS_PANIC = 7,
} NlfftStatus;

typedef enum NlfftForwardMethod {
  NLFFT_FORWARD_METHOD_NAIVE = 0,
  NLFFT_FORWARD_METHOD_FAST = 1,
} NlfftForwardMethod;

typedef enum NlfftInvertMethod {
  NLFFT_INVERT_METHOD_LAYER = 0,
  NLFFT_INVERT_METHOD_FAST = 1,
} NlfftInvertMethod;

/**
 * Opaque pair `(a, b)` of Laurent polynomials.
 */
typedef struct NlfftPair NlfftPair;

/**
 * Opaque finite sequence `gamma`.
 */
typedef struct NlfftSequence NlfftSequence;

/**
 * Complex number laid out as two doubles.
 */
typedef struct NlfftComplex {
  double re;
  double im;
} NlfftComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The string is
 * owned by the library and stays valid until the next call on this thread.
 */
const char *nlfft_last_error_message(void);

/**
 * Create a sequence `gamma_offset, ..., gamma_{offset+len-1}`.
 *
 * # Safety
 * `values` must point to `len` readable entries (or be null with `len == 0`)
 * and `out` must be a valid place to store the handle.
 */
enum NlfftStatus nlfft_sequence_new(int64_t offset,
                                    const struct NlfftComplex *values,
                                    size_t len,
                                    struct NlfftSequence **out);

/**
 * # Safety
 * `seq` must be null or a handle from this library that has not been freed.
 */
void nlfft_sequence_free(struct NlfftSequence *seq);

/**
 * Number of entries, 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t nlfft_sequence_len(const struct NlfftSequence *seq);

/**
 * Index of the first entry, 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
int64_t nlfft_sequence_offset(const struct NlfftSequence *seq);

/**
 * Copy the entries into `buf`, which holds `cap` items.
 *
 * # Safety
 * `seq` must be a live handle and `buf` must hold `cap` writable entries.
 */
enum NlfftStatus nlfft_sequence_copy_values(const struct NlfftSequence *seq,
                                            struct NlfftComplex *buf,
                                            size_t cap);

/**
 * Create the pair with `a = sum a_coeffs[j] z^{a_low + j}` and likewise for `b`.
 *
 * # Safety
 * Coefficient pointers must hold the stated number of entries and `out`
 * must be a valid place to store the handle.
 */
enum NlfftStatus nlfft_pair_new(int64_t a_low,
                                const struct NlfftComplex *a_coeffs,
                                size_t a_len,
                                int64_t b_low,
                                const struct NlfftComplex *b_coeffs,
                                size_t b_len,
                                struct NlfftPair **out);

/**
 * # Safety
 * `pair` must be null or a handle from this library that has not been freed.
 */
void nlfft_pair_free(struct NlfftPair *pair);

/**
 * Lowest degree and number of stored coefficients of `a` (`which == 0`) or `b`.
 *
 * # Safety
 * `pair` must be a live handle; `low` and `len` must be writable.
 */
enum NlfftStatus nlfft_pair_shape(const struct NlfftPair *pair,
                                  uint32_t which,
                                  int64_t *low,
                                  size_t *len);

/**
 * Copy the coefficients of `a` (`which == 0`) or `b` into `buf`.
 *
 * # Safety
 * `pair` must be a live handle and `buf` must hold `cap` writable entries.
 */
enum NlfftStatus nlfft_pair_copy_coeffs(const struct NlfftPair *pair,
                                        uint32_t which,
                                        struct NlfftComplex *buf,
                                        size_t cap);

/**
 * Forward transform of `seq` into a new pair.
 *
 * # Safety
 * `seq` must be a live handle and `out` a valid place to store the handle.
 */
enum NlfftStatus nlfft_forward(const struct NlfftSequence *seq,
                               enum NlfftForwardMethod method,
                               struct NlfftPair **out);

/**
 * Inverse transform of `pair` into a new sequence.
 *
 * # Safety
 * `pair` must be a live handle and `out` a valid place to store the handle.
 */
enum NlfftStatus nlfft_invert(const struct NlfftPair *pair,
                              enum NlfftInvertMethod method,
                              struct NlfftSequence **out);

/**
 * Complete `b = sum b_coeffs[j] z^{b_low + j}` to the pair with outer `a*`.
 *
 * # Safety
 * `b_coeffs` must hold `b_len` entries and `out` must be a valid place to
 * store the handle.
 */
enum NlfftStatus nlfft_complete_outer(int64_t b_low,
                                      const struct NlfftComplex *b_coeffs,
                                      size_t b_len,
                                      struct NlfftPair **out);

/**
 * QSP phases for the Chebyshev series `cheb[0..len]`. Writes `len` phases
 * into `psi` (capacity `cap`) and the grid residual into `residual`.
 *
 * # Safety
 * `cheb` must hold `len` entries, `psi` `cap` writable entries and
 * `residual` must be null or writable.
 */
enum NlfftStatus nlfft_qsp_solve(const double *cheb,
                                 size_t len,
                                 double *psi,
                                 size_t cap,
                                 double *residual);

/**
 * GQSP phases for `Q = sum q[j] z^j`. Writes `len` angles into each of
 * `psi` and `phi` (capacity `cap`) and the grid residual into `residual`.
 *
 * # Safety
 * `q` must hold `len` entries, `psi` and `phi` `cap` writable entries each,
 * and `residual` must be null or writable.
 */
enum NlfftStatus nlfft_gqsp_solve(const struct NlfftComplex *q,
                                  size_t len,
                                  double *psi,
                                  double *phi,
                                  size_t cap,
                                  double *residual);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NLFFT_H */
