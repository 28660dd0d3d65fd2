/* Generated by cbindgen; do not edit. */

#ifndef TATEKIT_H
#define TATEKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Marks a deviation the chosen route does not compute.
 */
#define TK_ABSENT UINT64_MAX

typedef enum {
  TK_CI_STATUS_NO = 0,
  TK_CI_STATUS_YES = 1,
  TK_CI_STATUS_UNCERTIFIED = 2,
} TkCiStatus;

typedef enum {
  TK_COMMAND_DEVIATIONS = 0,
  TK_COMMAND_CI_CHECK = 1,
  TK_COMMAND_AQ_RANKS = 2,
  TK_COMMAND_BETTI = 3,
  TK_COMMAND_POINCARE = 4,
  TK_COMMAND_KOSZUL_H1 = 5,
} TkCommand;

typedef enum {
  TK_ROUTE_MINIMAL_MODEL = 0,
  TK_ROUTE_ACYCLIC_CLOSURE = 1,
} TkRoute;

typedef enum {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_UTF8 = 2,
  TK_STATUS_INVALID_INPUT = 3,
  TK_STATUS_INVALID_CONFIG = 4,
  TK_STATUS_BOUND_EXCEEDED = 5,
  TK_STATUS_OUTSIDE_WINDOW = 6,
  TK_STATUS_INSUFFICIENT_CERTIFICATION = 7,
  TK_STATUS_PRECONDITION_FAILED = 8,
  TK_STATUS_BUFFER_TOO_SMALL = 9,
  TK_STATUS_INTERNAL = 10,
} TkStatus;

/**
 * Opaque handle to a parsed presentation.
 */
typedef struct TkPresentation TkPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Owned by the
 * library and valid until the next call.
 */
const char *tk_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *tk_version(void);

/**
 * Parses a presentation document. On success `*out` owns a handle to be
 * released with `tk_presentation_free`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
TkStatus tk_presentation_from_json(const char *json, TkPresentation **out);

/**
 * # Safety
 * `p` must be null or a handle from `tk_presentation_from_json` not yet freed.
 */
void tk_presentation_free(TkPresentation *p);

/**
 * Writes `ε_1 .. ε_N` to `out[0] .. out[N-1]`; entries the route does not
 * compute are `TK_ABSENT`.
 *
 * # Safety
 * `p` must be a live handle and `out` must point to `len` writable entries.
 */
TkStatus tk_deviations(const TkPresentation *p,
                       TkRoute route,
                       uint32_t n,
                       uint32_t d,
                       uint64_t *out,
                       size_t len);

/**
 * Writes `b_0 .. b_N` to `out`, which needs `N + 1` entries.
 *
 * # Safety
 * `p` must be a live handle and `out` must point to `len` writable entries.
 */
TkStatus tk_betti(const TkPresentation *p, uint32_t n, uint32_t d, uint64_t *out, size_t len);

/**
 * Complete-intersection verdict for the surjection from the base.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
TkStatus tk_ci_check(const TkPresentation *p, uint32_t d, TkCiStatus *out);

/**
 * Rank of `D_n` over the base. Fails with `TK_STATUS_OUTSIDE_WINDOW` where the
 * deviations do not determine it.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
TkStatus tk_aq_rank(const TkPresentation *p, uint32_t n, uint32_t d, uint64_t *out);

/**
 * The JSON report the command-line tool prints for `command`. On success
 * `*out` owns a string to be released with `tk_string_free`. `t` is only
 * read by `TK_COMMAND_POINCARE`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
TkStatus tk_report_json(const TkPresentation *p,
                        TkCommand command,
                        uint32_t n,
                        uint32_t d,
                        uint32_t t,
                        char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void tk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TATEKIT_H */
