/* C interface to the lambdakit workbench. All lk_term_* handles are opaque; free terms with lk_term_free and strings with lk_string_free. */

#ifndef LAMBDAKIT_H
#define LAMBDAKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Terminal status of a reduction run.
 */
typedef enum LkReduction {
  LK_REDUCTION_NORMAL_FORM = 0,
  LK_REDUCTION_FUEL_EXHAUSTED = 1,
} LkReduction;

/**
 * Status code for fallible calls.
 */
typedef enum LkStatus {
  LK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  LK_STATUS_NULL_ARGUMENT = 1,
  /**
   * Input text was not valid UTF-8.
   */
  LK_STATUS_INVALID_UTF8 = 2,
  /**
   * Input text did not parse; see `lk_last_error`.
   */
  LK_STATUS_PARSE_ERROR = 3,
} LkStatus;

/**
 * Tri-state answer of a fuel-bounded query.
 */
typedef enum LkVerdict {
  LK_VERDICT_POSITIVE = 0,
  LK_VERDICT_NEGATIVE = 1,
  LK_VERDICT_UNKNOWN = 2,
} LkVerdict;

/**
 * An opaque lambda term handle.
 */
typedef struct LkTerm LkTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message of the most recent error on this thread, or
 * null. The string is owned by the library; do not free it.
 */
const char *lk_last_error(void);

/**
 * Parses `text` into a term handle. With `allow_constants`, standard
 * combinator names (S, K, Theta, ...) are expanded.
 */
enum LkStatus lk_term_parse(const char *text, bool allow_constants, struct LkTerm **out_term);

/**
 * Releases a term handle. Null is ignored.
 */
void lk_term_free(struct LkTerm *term);

/**
 * Releases a string returned by this library. Null is ignored.
 */
void lk_string_free(char *s);

/**
 * Prints a term with minimal parentheses. Returns a caller-owned
 * string, or null on a null handle.
 */
char *lk_term_print(const struct LkTerm *term);

/**
 * Equality up to renaming of bound variables.
 */
bool lk_term_alpha_eq(const struct LkTerm *a, const struct LkTerm *b);

/**
 * Reduces a term with the leftmost strategy for at most `fuel`
 * contractions. Writes the reduct into `out_term` and the number of
 * steps taken into `out_steps` (either may be null).
 */
enum LkReduction lk_normalize(const struct LkTerm *term,
                              uint64_t fuel,
                              struct LkTerm **out_term,
                              uint64_t *out_steps);

/**
 * Beta-eta convertibility through common normal forms within `fuel`.
 */
enum LkVerdict lk_beta_eta_eq(const struct LkTerm *a, const struct LkTerm *b, uint64_t fuel);

/**
 * Solvability (existence of a head normal form) within `fuel`.
 * Never answers `Negative`.
 */
enum LkVerdict lk_solvable(const struct LkTerm *term, uint64_t fuel);

/**
 * Bracket abstraction to S/K/I, rendered in applicative notation.
 * Returns a caller-owned string, or null on a null handle.
 */
char *lk_compile(const struct LkTerm *term);

/**
 * Böhm-tree approximant of a term as JSON (the same schema the CLI
 * emits). Returns a caller-owned string, or null on a null handle.
 */
char *lk_bt_json(const struct LkTerm *term, uint64_t depth, uint64_t fuel);

/**
 * Encodes a natural number as a standard numeral.
 */
struct LkTerm *lk_numeral_encode(uint64_t n);

/**
 * Reads a numeral back; on `Positive`, the value is written to
 * `out_value`.
 */
enum LkVerdict lk_numeral_decode(const struct LkTerm *term, uint64_t fuel, uint64_t *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAMBDAKIT_H */
