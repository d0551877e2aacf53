#ifndef HILBERT_CONES_H
#define HILBERT_CONES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every `hc_*` call.
 */
typedef enum HcStatus {
  HC_STATUS_OK = 0,
  HC_STATUS_NULL_POINTER = 1,
  HC_STATUS_INVALID_UTF8 = 2,
  HC_STATUS_PARSE = 3,
  /**
   * The arguments are well formed but outside the operation's domain.
   */
  HC_STATUS_DOMAIN = 4,
  HC_STATUS_PANIC = 5,
} HcStatus;

/**
 * Opaque handle to an exact generating function.
 */
typedef struct HcSeries HcSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null after a
 * successful call. Valid until the next `hc_*` call on the same thread.
 */
const char *hc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void hc_string_free(char *s);

/**
 * Parse the JSON wire form into a new handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum HcStatus hc_series_from_json(const char *json, struct HcSeries **out);

/**
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_series_to_json(const struct HcSeries *series, char **out);

/**
 * # Safety
 * `series` must be null or a live handle, which is invalid afterwards.
 */
void hc_series_free(struct HcSeries *series);

/**
 * Coefficient of `t^j` as a `"p/q"` string.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_series_coeff(const struct HcSeries *series, size_t j, char **out);

/**
 * `T[h](j) = (n+j+1) h(j) - (j+1) h(j+1)` as a new handle.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_series_apply_t(const struct HcSeries *series, size_t n, struct HcSeries **out);

/**
 * Membership in `P(n, bound)`, `Q(n, bound)` or `R(n, bound)` for `cone`
 * one of `'P'`, `'Q'`, `'R'`. Writes 1 or 0 to `is_member` and, when
 * `certificate` is non-null, the certificate JSON.
 *
 * # Safety
 * `series` must be a live handle; `is_member` must be writable;
 * `certificate` must be null or writable.
 */
enum HcStatus hc_membership(const struct HcSeries *series,
                            char cone,
                            size_t n,
                            int64_t bound,
                            int32_t *is_member,
                            char **certificate);

/**
 * Coordinates in the extreme rays of `R(n, m)` as a JSON array of
 * `"p/q"` strings.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_r_decompose(const struct HcSeries *series, size_t n, size_t m, char **out);

/**
 * Betti-number upper bounds as `{"rows": {"j": {"i": "p/q"}}}`.
 *
 * # Safety
 * `series` must be a live handle; `out` must be writable.
 */
enum HcStatus hc_betti_bounds(const struct HcSeries *series, size_t n, size_t m, char **out);

/**
 * Number of degree-`j` monomials outside the ideal generated by `ngens`
 * exponent vectors stored row-major in `exponents` (`ngens * nvars`
 * entries).
 *
 * # Safety
 * `exponents` must point to `ngens * nvars` readable values (it may be null
 * when `ngens == 0`); `out` must be writable.
 */
enum HcStatus hc_hf_monomial_quotient(size_t nvars,
                                      const uint32_t *exponents,
                                      size_t ngens,
                                      uint32_t j,
                                      uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HILBERT_CONES_H */
