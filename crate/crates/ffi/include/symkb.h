#ifndef SYMKB_H
#define SYMKB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Three-valued answer of the substitution predicates.
typedef enum SymkbAnswer {
  SYMKB_ANSWER_NO = 0,
  SYMKB_ANSWER_YES = 1,
  SYMKB_ANSWER_UNKNOWN = 2,
} SymkbAnswer;

typedef enum SymkbFamily {
  SYMKB_FAMILY_SIGMA = 0,
  SYMKB_FAMILY_TAU = 1,
  SYMKB_FAMILY_LAMBDA = 2,
  SYMKB_FAMILY_MU = 3,
} SymkbFamily;

typedef enum SymkbLogic {
  SYMKB_LOGIC_KB = 0,
  SYMKB_LOGIC_KDB = 1,
  SYMKB_LOGIC_KTB = 2,
} SymkbLogic;

// Result code of every fallible call.
typedef enum SymkbStatus {
  SYMKB_STATUS_OK = 0,
  SYMKB_STATUS_NULL_POINTER = 1,
  SYMKB_STATUS_INVALID_UTF8 = 2,
  SYMKB_STATUS_PARSE_ERROR = 3,
  SYMKB_STATUS_INVALID_ARGUMENT = 4,
  SYMKB_STATUS_CONSTRUCTION_ERROR = 5,
  SYMKB_STATUS_PANIC = 6,
} SymkbStatus;

typedef enum SymkbVerdict {
  SYMKB_VERDICT_VALID = 0,
  SYMKB_VERDICT_INVALID = 1,
  SYMKB_VERDICT_UNKNOWN = 2,
} SymkbVerdict;

// Opaque formula handle.
typedef struct SymkbFormula SymkbFormula;

// Opaque pointed Kripke model handle.
typedef struct SymkbModel SymkbModel;

// Opaque substitution handle.
typedef struct SymkbSubstitution SymkbSubstitution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *symkb_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void symkb_string_free(char *s);

// Parses `text` into a new formula handle.
//
// # Safety
// `text` must be a NUL-terminated string; `out_formula` must be writable.
enum SymkbStatus symkb_formula_parse(const char *text, struct SymkbFormula **out_formula);

// The formula `(x → ⊞x) ∧ (¬x → ⊟¬x)`.
//
// # Safety
// `out_formula` must be writable.
enum SymkbStatus symkb_formula_nullary(struct SymkbFormula **out_formula);

// # Safety
// `f` must be NULL or a live formula handle.
void symkb_formula_free(struct SymkbFormula *f);

// Writes the concrete syntax of `f` as a new string.
//
// # Safety
// `f` must be a live formula handle; `out_text` must be writable.
enum SymkbStatus symkb_formula_to_string(const struct SymkbFormula *f, char **out_text);

// # Safety
// `f` must be a live formula handle; `out_degree` must be writable.
enum SymkbStatus symkb_formula_degree(const struct SymkbFormula *f, size_t *out_degree);

// Decides validity of `f`. A `max_nodes` of 0 selects the default budget.
// When the verdict is invalid and `out_countermodel` is not NULL, a new model
// handle holding the countermodel is written there; otherwise it is set to NULL.
//
// # Safety
// `f` must be a live formula handle; `out_verdict` must be writable;
// `out_countermodel` must be NULL or writable.
enum SymkbStatus symkb_decide(enum SymkbLogic logic,
                              const struct SymkbFormula *f,
                              size_t max_nodes,
                              enum SymkbVerdict *out_verdict,
                              struct SymkbModel **out_countermodel);

// Reads a pointed model from JSON `{"states","rel","val","point"}`; the point
// defaults to the first state.
//
// # Safety
// `json` must be a NUL-terminated string; `out_model` must be writable.
enum SymkbStatus symkb_model_from_json(const char *json, struct SymkbModel **out_model);

// # Safety
// `m` must be a live model handle; `out_json` must be writable.
enum SymkbStatus symkb_model_to_json(const struct SymkbModel *m, char **out_json);

// Whether the model satisfies `f` at its point.
//
// # Safety
// `m` and `f` must be live handles; `out_holds` must be writable.
enum SymkbStatus symkb_model_satisfies(const struct SymkbModel *m,
                                       const struct SymkbFormula *f,
                                       bool *out_holds);

// # Safety
// `m` must be NULL or a live model handle.
void symkb_model_free(struct SymkbModel *m);

// Joins `left` and `right` around their witness paths of length `k` and
// writes `{"model","root","root_prime"}` as JSON. With `reflexive`, both
// inputs must be reflexive and the result stays reflexive.
//
// # Safety
// `left` and `right` must be live model handles; `out_json` must be writable.
enum SymkbStatus symkb_bridge(const struct SymkbModel *left,
                              const struct SymkbModel *right,
                              size_t k,
                              bool reflexive,
                              char **out_json);

// Reads a substitution from JSON `{"map":{"x":"<formula>"}}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out_subst` must be writable.
enum SymkbStatus symkb_subst_from_json(const char *json, struct SymkbSubstitution **out_subst);

// The `k`-th member of one of the indexed families.
//
// # Safety
// `out_subst` must be writable.
enum SymkbStatus symkb_subst_family(enum SymkbFamily family,
                                    size_t k,
                                    struct SymkbSubstitution **out_subst);

// # Safety
// `s` must be a live substitution handle; `out_json` must be writable.
enum SymkbStatus symkb_subst_to_json(const struct SymkbSubstitution *s, char **out_json);

// `s(f)` as a new formula handle.
//
// # Safety
// `s` and `f` must be live handles; `out_formula` must be writable.
enum SymkbStatus symkb_subst_apply(const struct SymkbSubstitution *s,
                                   const struct SymkbFormula *f,
                                   struct SymkbFormula **out_formula);

// The substitution applying `first` and then `then`.
//
// # Safety
// `first` and `then` must be live handles; `out_subst` must be writable.
enum SymkbStatus symkb_subst_compose(const struct SymkbSubstitution *first,
                                     const struct SymkbSubstitution *then,
                                     struct SymkbSubstitution **out_subst);

// Whether `s ≃ t` in `logic`. A `max_nodes` of 0 selects the default budget.
//
// # Safety
// `s` and `t` must be live handles; `out_answer` must be writable.
enum SymkbStatus symkb_subst_equivalent(enum SymkbLogic logic,
                                        const struct SymkbSubstitution *s,
                                        const struct SymkbSubstitution *t,
                                        size_t max_nodes,
                                        enum SymkbAnswer *out_answer);

// Whether `s(f)` is valid in `logic`. A `max_nodes` of 0 selects the default budget.
//
// # Safety
// `s` and `f` must be live handles; `out_answer` must be writable.
enum SymkbStatus symkb_subst_is_unifier(enum SymkbLogic logic,
                                        const struct SymkbSubstitution *s,
                                        const struct SymkbFormula *f,
                                        size_t max_nodes,
                                        enum SymkbAnswer *out_answer);

// # Safety
// `s` must be NULL or a live substitution handle.
void symkb_subst_free(struct SymkbSubstitution *s);

// Runs the lemma suite and writes its JSON report. `out_all_pass` is set
// when every check passed.
//
// # Safety
// `out_report` and `out_all_pass` must be writable.
enum SymkbStatus symkb_run_suite(enum SymkbLogic logic,
                                 size_t k_max,
                                 size_t l_max,
                                 uint64_t seed,
                                 char **out_report,
                                 bool *out_all_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMKB_H */
