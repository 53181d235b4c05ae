#ifndef BRAIDREP_H
#define BRAIDREP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * One variable per strand.
 */
#define BRAIDREP_COLORED 1

/**
 * All n! blocks of the induced representation.
 */
#define BRAIDREP_INDUCED 2

typedef enum BraidrepStatus {
  BRAIDREP_STATUS_OK = 0,
  BRAIDREP_STATUS_NULL_POINTER,
  BRAIDREP_STATUS_INVALID_UTF8,
  BRAIDREP_STATUS_PARSE,
  BRAIDREP_STATUS_INVALID_BOUNDS,
  BRAIDREP_STATUS_NOT_PURE,
  BRAIDREP_STATUS_MISMATCH,
  BRAIDREP_STATUS_ARITHMETIC,
  BRAIDREP_STATUS_UNKNOWN_NAME,
  BRAIDREP_STATUS_PANIC,
} BraidrepStatus;

typedef enum BraidrepFamily {
  BRAIDREP_FAMILY_BURAU = 0,
  BRAIDREP_FAMILY_REDUCED_BURAU,
  BRAIDREP_FAMILY_GASSNER,
  BRAIDREP_FAMILY_QUANT,
  BRAIDREP_FAMILY_BKL,
  BRAIDREP_FAMILY_LAWRENCE,
} BraidrepFamily;

typedef enum BraidrepFormat {
  BRAIDREP_FORMAT_JSON = 0,
  BRAIDREP_FORMAT_LATEX,
  BRAIDREP_FORMAT_CSV_MONOMIAL,
} BraidrepFormat;

typedef struct BraidrepBraid BraidrepBraid;

typedef struct BraidrepRep BraidrepRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Borrowed; do not free.
 */
const char *braidrep_last_error(void);

/**
 * Parses signed generator indices such as `"1 -2 1"` on `n` strands.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BraidrepStatus braidrep_braid_parse(size_t n, const char *text, struct BraidrepBraid **out);

/**
 * # Safety
 * `b` must come from `braidrep_braid_parse` and not be freed twice.
 */
void braidrep_braid_free(struct BraidrepBraid *b);

/**
 * Strand count, or 0 for NULL.
 *
 * # Safety
 * `b` must be NULL or a live braid handle.
 */
size_t braidrep_braid_strands(const struct BraidrepBraid *b);

/**
 * Word length, or 0 for NULL.
 *
 * # Safety
 * `b` must be NULL or a live braid handle.
 */
size_t braidrep_braid_length(const struct BraidrepBraid *b);

/**
 * # Safety
 * `b` must be NULL or a live braid handle.
 */
bool braidrep_braid_is_pure(const struct BraidrepBraid *b);

/**
 * Matrix (or graded map, for induced and quantum families) of a braid.
 * `m` is only read for Lawrence; `flags` is a mask of `BRAIDREP_COLORED`
 * and `BRAIDREP_INDUCED`.
 *
 * # Safety
 * `braid` must be a live braid handle and `out` a valid pointer.
 */
enum BraidrepStatus braidrep_rep_compute(const struct BraidrepBraid *braid,
                                         enum BraidrepFamily family,
                                         uint32_t m,
                                         uint32_t flags,
                                         struct BraidrepRep **out);

/**
 * # Safety
 * `r` must come from `braidrep_rep_compute` and not be freed twice.
 */
void braidrep_rep_free(struct BraidrepRep *r);

/**
 * Rows and columns of each block, and the number of blocks (1 for a plain matrix).
 *
 * # Safety
 * `r` must be a live handle; the out pointers must be valid.
 */
enum BraidrepStatus braidrep_rep_dims(const struct BraidrepRep *r,
                                      size_t *rows,
                                      size_t *cols,
                                      size_t *blocks);

/**
 * Serialises a representation; release the string with `braidrep_string_free`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum BraidrepStatus braidrep_rep_to_string(const struct BraidrepRep *r,
                                           enum BraidrepFormat format,
                                           char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void braidrep_string_free(char *s);

/**
 * Runs a verification suite. `max_n`/`max_m` of 0 keep the suite defaults.
 * `passed` receives the verdict; `report`, if non-NULL, the JSON report.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `passed` a valid pointer;
 * `report` NULL or valid.
 */
enum BraidrepStatus braidrep_verify(const char *suite,
                                    uint64_t seed,
                                    size_t max_n,
                                    uint32_t max_m,
                                    bool *passed,
                                    char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRAIDREP_H */
