#ifndef SPINDEX_H
#define SPINDEX_H

/* Generated by cbindgen from the spindex-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum {
  SpxOk = 0,
  SpxNullArgument = 1,
  SpxInvalidUtf8 = 2,
  /**
   * Config parse/validation failure (CLI exit code 1).
   */
  SpxConfigError = 3,
  /**
   * Mathematical precondition violation (CLI exit code 2).
   */
  SpxMathError = 4,
  /**
   * A verification command found a mismatch (CLI exit code 3).
   */
  SpxVerifyFailed = 5,
  SpxInternalError = 6,
} SpxStatus;

/**
 * An opaque parsed-and-built job handle.
 */
typedef struct SpxJob SpxJob;

/**
 * An opaque root-system handle.
 */
typedef struct SpxRootDatum SpxRootDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Crate version as a static string; do not free.
 */
const char *spx_version(void);

/**
 * The last error message on this thread, or null when none was recorded.
 * The returned string must be freed with `spx_string_free`.
 */
char *spx_last_error(void);

/**
 * Frees a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must have been returned by a function of this library and not freed
 * before.
 */
void spx_string_free(char *s);

/**
 * Builds a root datum for a type label (`A1`, `A1xA1`, `A2`, `B2`).
 *
 * # Safety
 * `label` must be a valid NUL-terminated string and `out` a valid pointer.
 */
SpxStatus spx_root_datum_new(const char *label, SpxRootDatum **out);

/**
 * # Safety
 * `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
 */
SpxStatus spx_root_datum_rank(const SpxRootDatum *rd, uint32_t *out);

/**
 * # Safety
 * `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
 */
SpxStatus spx_root_datum_positive_roots(const SpxRootDatum *rd, uint32_t *out);

/**
 * # Safety
 * `rd` must be a live handle from `spx_root_datum_new`; `out` valid.
 */
SpxStatus spx_root_datum_weyl_order(const SpxRootDatum *rd, uint32_t *out);

/**
 * # Safety
 * `rd` must come from `spx_root_datum_new` and not be freed twice.
 */
void spx_root_datum_free(SpxRootDatum *rd);

/**
 * Parses a job configuration (the same INI grammar as the CLI) and builds
 * the algebra, modules and window behind an opaque handle.
 *
 * # Safety
 * `config` must be a valid NUL-terminated string and `out` a valid pointer.
 */
SpxStatus spx_job_parse(const char *config, SpxJob **out);

/**
 * The command name the job will run; static string, do not free.
 *
 * # Safety
 * `job` must be a live handle from `spx_job_parse`.
 */
const char *spx_job_command(const SpxJob *job);

/**
 * Runs a job and returns the rendered report through `out`.
 * `format`: 0 = CSV, 1 = JSON-lines. `parallel` bounds the worker count
 * without changing output bytes. Returns `SPX_VERIFY_FAILED` (with the
 * output still written) when a verification command found a mismatch.
 *
 * # Safety
 * `job` must be a live handle from `spx_job_parse`; `out` a valid pointer.
 */
SpxStatus spx_job_run(const SpxJob *job, int format, uint32_t parallel, char **out);

/**
 * # Safety
 * `job` must come from `spx_job_parse` and not be freed twice.
 */
void spx_job_free(SpxJob *job);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINDEX_H */
