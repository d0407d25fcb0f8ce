#ifndef HOLONOMIC_H
#define HOLONOMIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HoloConversion {
  HOLO_CONVERSION_REC_TO_ODE = 0,
  HOLO_CONVERSION_ODE_TO_REC = 1,
  HOLO_CONVERSION_ALG_TO_ODE = 2,
  HOLO_CONVERSION_HOMOGENIZE = 3,
} HoloConversion;

typedef enum HoloGuessKind {
  HOLO_GUESS_KIND_REC = 0,
  HOLO_GUESS_KIND_ODE = 1,
  HOLO_GUESS_KIND_ALG = 2,
} HoloGuessKind;

// Result of every fallible call.
typedef enum HoloStatus {
  HOLO_STATUS_OK = 0,
  HOLO_STATUS_NO_RELATION = 2,
  HOLO_STATUS_PARSE_ERROR = 3,
  HOLO_STATUS_INVALID_INPUT = 4,
  HOLO_STATUS_INTERNAL = 5,
  HOLO_STATUS_NULL_POINTER = 6,
  HOLO_STATUS_PANIC = 7,
} HoloStatus;

// An element of a shift or differential Ore algebra.
typedef struct HoloOperator HoloOperator;

// A recurrence, differential equation or algebraic equation with its initial data.
typedef struct HoloRelation HoloRelation;

// A term list.
typedef struct HoloSequence HoloSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. Valid until the next failing call.
const char *holo_last_error(void);

const char *holo_version(void);

// # Safety
// `s` must come from this library or be null.
void holo_string_free(char *s);

// Parses a plain or b-file term list.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum HoloStatus holo_sequence_parse(const char *input, struct HoloSequence **out);

// # Safety
// `seq` must be a live handle or null.
size_t holo_sequence_len(const struct HoloSequence *seq);

// Writes term `i` as `p` or `p/q`.
//
// # Safety
// `seq` must be a live handle; `out` must be writable.
enum HoloStatus holo_sequence_term(const struct HoloSequence *seq, size_t i, char **out);

// # Safety
// `seq` must come from this library or be null.
void holo_sequence_free(struct HoloSequence *seq);

// Guesses a relation with default settings, `max_order` overriding the order bound when nonzero.
// Returns `NoRelation` when the sweep finds nothing.
//
// # Safety
// `seq` must be a live handle; `out` must be writable.
enum HoloStatus holo_guess(const struct HoloSequence *seq,
                           enum HoloGuessKind kind,
                           size_t max_order,
                           struct HoloRelation **out);

// Parses a relation in JSON or pretty form.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum HoloStatus holo_relation_parse(const char *input, struct HoloRelation **out);

// # Safety
// `rel` must be a live handle; `out` must be writable.
enum HoloStatus holo_relation_format(const struct HoloRelation *rel, bool json, char **out);

// # Safety
// `rel` must come from this library or be null.
void holo_relation_free(struct HoloRelation *rel);

// # Safety
// `rel` must be a live handle; `out` must be writable.
enum HoloStatus holo_convert(const struct HoloRelation *rel,
                             enum HoloConversion how,
                             struct HoloRelation **out);

// Relation for the termwise sum (recurrences) or sum of series (ODEs).
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HoloStatus holo_closure_add(const struct HoloRelation *a,
                                 const struct HoloRelation *b,
                                 struct HoloRelation **out);

// Relation for the termwise product (recurrences) or Cauchy product (ODEs).
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HoloStatus holo_closure_mul(const struct HoloRelation *a,
                                 const struct HoloRelation *b,
                                 struct HoloRelation **out);

// First `n` terms of a recurrence or series coefficients of an ODE or algebraic equation.
//
// # Safety
// `rel` must be a live handle; `out` must be writable.
enum HoloStatus holo_expand(const struct HoloRelation *rel, size_t n, struct HoloSequence **out);

// Term `n` of a recurrence by binary splitting, as a decimal string.
//
// # Safety
// `rel` must be a live handle; `out` must be writable.
enum HoloStatus holo_nth_term(const struct HoloRelation *rel, size_t n, char **out);

// Operator of a recurrence or differential equation.
//
// # Safety
// `rel` must be a live handle; `out` must be writable.
enum HoloStatus holo_relation_operator(const struct HoloRelation *rel, struct HoloOperator **out);

// Parses `kind=shift var=n; [[...]; [...]]`.
//
// # Safety
// `input` must be a nul-terminated string; `out` must be writable.
enum HoloStatus holo_operator_parse(const char *input, struct HoloOperator **out);

// Canonical form in the text syntax accepted by [`holo_operator_parse`].
//
// # Safety
// `op` must be a live handle; `out` must be writable.
enum HoloStatus holo_operator_format(const struct HoloOperator *op, char **out);

// # Safety
// `op` must be a live handle or null.
size_t holo_operator_order(const struct HoloOperator *op);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HoloStatus holo_operator_gcrd(const struct HoloOperator *a,
                                   const struct HoloOperator *b,
                                   struct HoloOperator **out);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum HoloStatus holo_operator_lclm(const struct HoloOperator *a,
                                   const struct HoloOperator *b,
                                   struct HoloOperator **out);

// # Safety
// `op` must come from this library or be null.
void holo_operator_free(struct HoloOperator *op);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOLONOMIC_H */
