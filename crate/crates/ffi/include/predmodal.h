#ifndef PREDMODAL_H
#define PREDMODAL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which logic a membership query or embedding refers to.
typedef enum PmLogic {
  PM_LOGIC_L0 = 0,
  PM_LOGIC_L1 = 1,
} PmLogic;

// Result codes.
typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  PM_STATUS_PARSE_ERROR = 3,
  PM_STATUS_INVALID_ARGUMENT = 4,
  PM_STATUS_BUDGET_EXCEEDED = 5,
  PM_STATUS_PANIC = 6,
} PmStatus;

// Output of [`pm_translate`].
typedef enum PmTranslation {
  // The embedding into first-order logic for `L0`.
  PM_TRANSLATION_EMBED_L0 = 0,
  // The embedding for `L1`.
  PM_TRANSLATION_EMBED_L1 = 1,
  // The bare standard translation at the free variable `x`.
  PM_TRANSLATION_STANDARD_X = 2,
} PmTranslation;

// A parsed modal formula.
typedef struct PmFormula PmFormula;

// A finite Kripke frame.
typedef struct PmFrame PmFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call into the library on this
// thread.
const char *pm_last_error(void);

// Releases a string returned by the library.
//
// # Safety
// `s` is null or a pointer obtained from this library, not yet freed.
void pm_string_free(char *s);

// Parses a modal formula.
//
// # Safety
// `source` is a NUL-terminated string; `result` is writable.
enum PmStatus pm_formula_parse(const char *source, struct PmFormula **result);

// # Safety
// `f` is null or a live handle from [`pm_formula_parse`].
void pm_formula_free(struct PmFormula *f);

// # Safety
// `f` is a live formula handle; `depth` is writable.
enum PmStatus pm_formula_modal_depth(const struct PmFormula *f, size_t *depth);

// Canonical text of the formula, or null on a null handle.
//
// # Safety
// `f` is null or a live formula handle.
char *pm_formula_to_string(const struct PmFormula *f);

// Generates a family frame: `chain`, `ring`, `marked`, `union` or
// `ring-union`.
//
// # Safety
// `family` is a NUL-terminated string; `result` is writable.
enum PmStatus pm_frame_generate(const char *family, size_t n, struct PmFrame **result);

// Reads a frame from the JSON document format.
//
// # Safety
// `json` is a NUL-terminated string; `result` is writable.
enum PmStatus pm_frame_from_json(const char *json, struct PmFrame **result);

// The frame as a JSON document, or null on a null handle.
//
// # Safety
// `f` is null or a live frame handle.
char *pm_frame_to_json(const struct PmFrame *f);

// # Safety
// `f` is a live frame handle; `count` is writable.
enum PmStatus pm_frame_world_count(const struct PmFrame *f, size_t *count);

// # Safety
// `f` is null or a live handle from this library.
void pm_frame_free(struct PmFrame *f);

// Validity of the formula at every world of the frame, over domains from
// a pool of `domain_bound` elements.
//
// # Safety
// Handles are live; `valid` is writable.
enum PmStatus pm_frame_validity(const struct PmFrame *frame,
                                const struct PmFormula *formula,
                                size_t domain_bound,
                                bool *valid);

// Bounded membership. `frame_bound == 0` means `md + 3`. On refutation
// `*member` is false and, if `countermodel` is non-null, it receives the
// countermodel as a JSON document (free with [`pm_string_free`]).
//
// # Safety
// `formula` is live; `member` is writable; `countermodel` is null or
// writable.
enum PmStatus pm_check(enum PmLogic logic,
                       const struct PmFormula *formula,
                       size_t domain_bound,
                       size_t frame_bound,
                       bool *member,
                       char **countermodel);

// First-order text of the chosen translation.
//
// # Safety
// `formula` is live; `result` is writable.
enum PmStatus pm_translate(enum PmTranslation kind, const struct PmFormula *formula, char **result);

// Whether Duplicator survives `rounds` rounds on the two frames.
//
// # Safety
// Handles are live; `wins` is writable.
enum PmStatus pm_ef_duplicator_wins(const struct PmFrame *left,
                                    const struct PmFrame *right,
                                    size_t rounds,
                                    bool *wins);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PREDMODAL_H */
