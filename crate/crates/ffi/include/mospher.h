#ifndef MOSPHER_H
#define MOSPHER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum MospherStatus {
  MOSPHER_STATUS_OK = 0,
  MOSPHER_STATUS_NULL_POINTER = 1,
  MOSPHER_STATUS_INVALID_PARAMETER = 2,
  MOSPHER_STATUS_OUT_OF_DOMAIN = 3,
  MOSPHER_STATUS_SHAPE_MISMATCH = 4,
  MOSPHER_STATUS_NUMERICAL = 5,
  MOSPHER_STATUS_IDENTITY_VIOLATED = 6,
  MOSPHER_STATUS_INVALID_UTF8 = 7,
  MOSPHER_STATUS_BUFFER_TOO_SMALL = 8,
  MOSPHER_STATUS_PANIC = 9,
} MospherStatus;

/**
 * A fundamental `K`-type on the sphere `S^n`.
 */
typedef struct MospherSnCase MospherSnCase;

/**
 * Cached data of the SO(4) family for one `ell`.
 */
typedef struct MospherSo4 MospherSo4;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *mospher_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *mospher_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void mospher_string_free(char *s);

/**
 * Creates the SO(4) family for `ell`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MospherStatus mospher_so4_new(uint32_t ell, struct MospherSo4 **out);

/**
 * # Safety
 * `h` must come from [`mospher_so4_new`] and must not be used afterwards.
 */
void mospher_so4_free(struct MospherSo4 *h);

/**
 * # Safety
 * `h` must be a live handle.
 */
uint32_t mospher_so4_ell(const struct MospherSo4 *h);

/**
 * JSON document with `P_w`, `P̃_w`, `Λ_w`, `M_w` and the weight.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum MospherStatus mospher_so4_gen_json(const struct MospherSo4 *h, uint32_t w, char **out);

/**
 * Column `k` of `H(u)`, written as `ell + 1` pairs into `re` and `im`.
 *
 * # Safety
 * `h` must be a live handle; `re` and `im` must hold `len` doubles.
 */
enum MospherStatus mospher_so4_eval(const struct MospherSo4 *h,
                                    uint32_t w,
                                    uint32_t k,
                                    double u,
                                    double *re,
                                    double *im,
                                    size_t len);

/**
 * JSON verification report for `w <= max_w`; `nodes = 0` picks the default.
 *
 * # Safety
 * `h` must be a live handle, `out` and `all_pass` valid pointers.
 */
enum MospherStatus mospher_so4_verify_json(const struct MospherSo4 *h,
                                           uint32_t max_w,
                                           uint32_t nodes,
                                           bool *all_pass,
                                           char **out);

/**
 * Creates the fundamental case with `p` ones on `S^n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum MospherStatus mospher_sn_case_new(uint32_t n, uint32_t p, struct MospherSnCase **out);

/**
 * # Safety
 * `h` must come from [`mospher_sn_case_new`] and must not be used afterwards.
 */
void mospher_sn_case_free(struct MospherSnCase *h);

/**
 * JSON document of the polynomial solution of degree `w` with leading
 * direction `delta` (0 or 1).
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum MospherStatus mospher_sn_fundamental_json(const struct MospherSnCase *h,
                                               uint32_t w,
                                               int32_t delta,
                                               char **out);

/**
 * Constant `(n-1)!/Γ(n/2)²` making the scalar factor of the weight a
 * probability density on `[0, 1]`.
 *
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum MospherStatus mospher_sn_normalization(const struct MospherSnCase *h, double *out);

/**
 * JSON verification report for `w <= max_w`; `nodes = 0` picks the default.
 *
 * # Safety
 * `h` must be a live handle, `out` and `all_pass` valid pointers.
 */
enum MospherStatus mospher_sn_verify_json(const struct MospherSnCase *h,
                                          uint32_t max_w,
                                          uint32_t nodes,
                                          bool *all_pass,
                                          char **out);

/**
 * `φ_j(x)` for the space named `space` (`sphere`, `projreal`,
 * `projcomplex`, `projquat`, `cayley`).
 *
 * # Safety
 * `space` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MospherStatus mospher_zonal_phi(const char *space,
                                     uint32_t n,
                                     uint32_t j,
                                     double x,
                                     double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOSPHER_H */
