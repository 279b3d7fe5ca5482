#ifndef JOKERLAB_H
#define JOKERLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum JlStatus {
  JL_STATUS_OK = 0,
  JL_STATUS_NULL_POINTER = 1,
  JL_STATUS_INVALID_UTF8 = 2,
  JL_STATUS_UNKNOWN_NAME = 3,
  JL_STATUS_PARSE = 4,
  JL_STATUS_INVALID_ARGUMENT = 5,
  JL_STATUS_COMPUTATION = 6,
  JL_STATUS_PANIC = 7,
} JlStatus;

/**
 * An F4[G]-module.
 */
typedef struct JlModule JlModule;

/**
 * A verification report.
 */
typedef struct JlReport JlReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * A named F4[Q8]-module such as "W5" or "Jprime".
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum JlStatus jl_module_builtin(const char *name, struct JlModule **out);

/**
 * Reads the JSON module-definition format {field, group, generators}.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum JlStatus jl_module_from_json(const char *json, struct JlModule **out);

/**
 * # Safety
 * `m` must be a live module handle and `out` a valid pointer.
 */
enum JlStatus jl_module_dim(const struct JlModule *m, size_t *out);

/**
 * # Safety
 * `m` must be a live module handle and `out` a valid pointer.
 */
enum JlStatus jl_module_is_endotrivial(const struct JlModule *m, bool *out);

/**
 * The n-th syzygy Omega^n M as a new handle.
 *
 * # Safety
 * `m` must be a live module handle and `out` a valid pointer.
 */
enum JlStatus jl_module_syzygy(const struct JlModule *m, size_t n, struct JlModule **out);

/**
 * # Safety
 * `a`, `b` must be live module handles and `out` a valid pointer.
 */
enum JlStatus jl_module_stable_iso(const struct JlModule *a, const struct JlModule *b, bool *out);

/**
 * # Safety
 * `m` must be null or a handle not yet freed.
 */
void jl_module_free(struct JlModule *m);

/**
 * Comma-separated F4 residues of the first `n` Teichmuller digits of a Q8
 * element ("1", "-1", "i", ...). Free the string with `jl_string_free`.
 *
 * # Safety
 * `element` must be a nul-terminated string and `out` a valid pointer.
 */
enum JlStatus jl_teichmuller_digits(const char *element, size_t n, char **out);

/**
 * Betti numbers b_0..b_max_degree of Q8 over F4, written to `out` (which
 * must hold `max_degree + 1` entries).
 *
 * # Safety
 * `out` must point to `len` writable entries.
 */
enum JlStatus jl_ext_betti(size_t max_degree, size_t *out, size_t len);

/**
 * Runs the verification suite; `filter` may be null.
 *
 * # Safety
 * `filter` must be null or nul-terminated; `out` must be valid.
 */
enum JlStatus jl_verify_paper(const char *filter, struct JlReport **out);

/**
 * Number of failed checks.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum JlStatus jl_report_failures(const struct JlReport *r, size_t *out);

/**
 * The report as JSON. Free the string with `jl_string_free`.
 *
 * # Safety
 * `r` must be a live report handle and `out` a valid pointer.
 */
enum JlStatus jl_report_json(const struct JlReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a report handle not yet freed.
 */
void jl_report_free(struct JlReport *r);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void jl_string_free(char *s);

/**
 * The message for the last failed call on this thread, or "" after a
 * success. Valid until the next call on this thread; do not free.
 */
const char *jl_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JOKERLAB_H */
