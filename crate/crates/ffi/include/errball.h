#ifndef ERRBALL_H
#define ERRBALL_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Closed form where one exists, enumeration otherwise.
 */
#define ERRBALL_MODE_FORMULA 0

/**
 * Enumeration only.
 */
#define ERRBALL_MODE_ORACLE 1

#define ERRBALL_METHOD_FORMULA 0

#define ERRBALL_METHOD_ORACLE 1

#define ERRBALL_METHOD_FORMULA_WITH_ORACLE_FALLBACK 2

typedef enum ErrballStatus {
  ERRBALL_STATUS_OK = 0,
  ERRBALL_STATUS_NULL_POINTER = 1,
  ERRBALL_STATUS_MALFORMED_INPUT = 2,
  ERRBALL_STATUS_INVALID_ALPHABET = 3,
  ERRBALL_STATUS_INVALID_CHANNEL = 4,
  ERRBALL_STATUS_RANGE = 5,
  ERRBALL_STATUS_BUDGET_EXCEEDED = 6,
  ERRBALL_STATUS_PRECONDITION = 7,
  ERRBALL_STATUS_OVERFLOW = 8,
  ERRBALL_STATUS_INVALID_ARGUMENT = 9,
  ERRBALL_STATUS_PANIC = 10,
} ErrballStatus;

/**
 * Opaque sequence handle.
 */
typedef struct ErrballSequence ErrballSequence;

typedef struct ErrballChannel {
  uint32_t t1;
  uint32_t t2;
  uint32_t t3;
} ErrballChannel;

typedef struct ErrballPairCounts {
  uint64_t a;
  uint64_t b;
  uint64_t c;
  uint64_t d;
} ErrballPairCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The
 * pointer stays valid until the next failing call on this thread.
 */
const char *errball_last_error_message(void);

/**
 * Parse a NUL-terminated sequence over `Σ_q` into a new handle.
 *
 * # Safety
 * `text` must be a valid C string and `out` a writable pointer.
 */
enum ErrballStatus errball_sequence_parse(const char *text,
                                          uint32_t q,
                                          struct ErrballSequence **out);

/**
 * Release a handle from [`errball_sequence_parse`]. Null is ignored.
 *
 * # Safety
 * `seq` must be null or a handle not yet freed.
 */
void errball_sequence_free(struct ErrballSequence *seq);

/**
 * Word length; 0 for null.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t errball_sequence_len(const struct ErrballSequence *seq);

/**
 * Number of runs; 0 for null.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t errball_sequence_rho(const struct ErrballSequence *seq);

/**
 * `|B_{t1,t2,t3}(seq)|`. `mode` is one of the `ERRBALL_MODE_*` values;
 * `budget` caps enumeration (0 uses the default). `out_method` may be null.
 *
 * # Safety
 * `seq` must be a live handle; `out_size` and a non-null `out_method`
 * must be writable.
 */
enum ErrballStatus errball_ball_size(const struct ErrballSequence *seq,
                                     struct ErrballChannel chan,
                                     uint32_t mode,
                                     uint64_t budget,
                                     uint64_t *out_size,
                                     uint32_t *out_method);

/**
 * Ball size by exhaustive enumeration.
 *
 * # Safety
 * `seq` must be a live handle and `out_size` writable.
 */
enum ErrballStatus errball_oracle_size(const struct ErrballSequence *seq,
                                       struct ErrballChannel chan,
                                       uint64_t budget,
                                       uint64_t *out_size);

/**
 * Pair and triple counts `(A, B, C, D)` of the 1-subsequences.
 *
 * # Safety
 * `seq` must be a live handle and `out` writable.
 */
enum ErrballStatus errball_count_abcd(const struct ErrballSequence *seq,
                                      struct ErrballPairCounts *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ERRBALL_H */
