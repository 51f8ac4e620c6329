#ifndef SKEWDIL_H
#define SKEWDIL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SkewdilStatus {
  SKEWDIL_STATUS_OK = 0,
  SKEWDIL_STATUS_NULL_ARGUMENT = 1,
  SKEWDIL_STATUS_INVALID_UTF8 = 2,
  SKEWDIL_STATUS_PARSE_ERROR = 3,
  SKEWDIL_STATUS_INVALID_ARGUMENT = 4,
  SKEWDIL_STATUS_PANIC = 5,
} SkewdilStatus;

/**
 * The report of one run.
 */
typedef struct SkewdilReport SkewdilReport;

/**
 * A parsed session.
 */
typedef struct SkewdilSession SkewdilSession;

/**
 * Overrides for `skewdil_session_run`. A null pointer means no overrides.
 */
typedef struct SkewdilRunOptions {
  /**
   * When false, the session's `seed` (or 0) is used.
   */
  bool override_seed;
  uint64_t seed;
  /**
   * 0 keeps the session's `trials` (or 50).
   */
  size_t trials;
} SkewdilRunOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null.
 */
const char *skewdil_last_error(void);

/**
 * Library version, static storage.
 */
const char *skewdil_version(void);

/**
 * # Safety
 * `s` is null or came from this library and has not been freed.
 */
void skewdil_string_free(char *s);

/**
 * Parse session text. Errors carry `line L, column C`.
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is writable.
 */
enum SkewdilStatus skewdil_session_parse(const char *text, struct SkewdilSession **out);

/**
 * # Safety
 * `s` is null or a live session from `skewdil_session_parse`.
 */
void skewdil_session_free(struct SkewdilSession *s);

/**
 * Canonical text of a session; parsing it gives the same statements.
 *
 * # Safety
 * `s` is a live session; `out` is writable.
 */
enum SkewdilStatus skewdil_session_render(const struct SkewdilSession *s, char **out);

/**
 * Run every statement. A failing check is not an error: inspect the report.
 *
 * # Safety
 * `s` is a live session; `opts` is null or valid; `out` is writable.
 */
enum SkewdilStatus skewdil_session_run(const struct SkewdilSession *s,
                                       const struct SkewdilRunOptions *opts,
                                       struct SkewdilReport **out);

/**
 * # Safety
 * `r` is null or a live report.
 */
void skewdil_report_free(struct SkewdilReport *r);

/**
 * # Safety
 * `r` is a live report; `out` is writable.
 */
enum SkewdilStatus skewdil_report_text(const struct SkewdilReport *r, char **out);

/**
 * Line-oriented `key=value` form, stable for a fixed seed.
 *
 * # Safety
 * `r` is a live report; `out` is writable.
 */
enum SkewdilStatus skewdil_report_structured(const struct SkewdilReport *r, char **out);

/**
 * Number of checks; 0 for a null report.
 *
 * # Safety
 * `r` is null or a live report.
 */
size_t skewdil_report_checks(const struct SkewdilReport *r);

/**
 * Number of failed checks; 0 for a null report.
 *
 * # Safety
 * `r` is null or a live report.
 */
size_t skewdil_report_failures(const struct SkewdilReport *r);

/**
 * The CLI's exit status for this report: 0 when every check passed, else 1.
 * A null report gives 2.
 *
 * # Safety
 * `r` is null or a live report.
 */
int32_t skewdil_report_exit_code(const struct SkewdilReport *r);

/**
 * Order of the cokernel of 1 − n on Z[1/n]; 1 means trivial.
 *
 * # Safety
 * `out` is writable.
 */
enum SkewdilStatus skewdil_ktheory_cokernel_order(uint64_t n, uint64_t *out);

/**
 * Class of `num / n^k` in the cokernel Z/(n − 1).
 *
 * # Safety
 * `out` is writable.
 */
enum SkewdilStatus skewdil_ktheory_class(uint64_t n, int64_t num, uint32_t k, uint64_t *out);

/**
 * Normal form in L_n of an expression over `x<i>`, `y<i>` and rationals,
 * e.g. `y1*x1 + y2*x2` or `2*x1*(y1 - y2)`.
 *
 * # Safety
 * `expr` is a NUL-terminated string; `out` is writable.
 */
enum SkewdilStatus skewdil_leavitt_normalize(uint8_t n, const char *expr, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEWDIL_H */
