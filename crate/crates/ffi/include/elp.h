#ifndef ELP_H
#define ELP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ElpKind {
  ELP_KIND_CWV = 0,
  ELP_KIND_WV = 1,
} ElpKind;

typedef enum ElpMode {
  ELP_MODE_ELP = 0,
  ELP_MODE_ASP = 1,
} ElpMode;

typedef enum ElpNotion {
  ELP_NOTION_ORDINARY_CWV = 0,
  ELP_NOTION_ORDINARY_WV = 1,
  ELP_NOTION_UNIFORM_CWV = 2,
  ELP_NOTION_UNIFORM_WV = 3,
  ELP_NOTION_ASP_UNIFORM = 4,
} ElpNotion;

/**
 * Result codes. `NotEquivalent` and `NoSolution` are verdicts, not errors.
 */
typedef enum ElpStatus {
  ELP_STATUS_OK = 0,
  ELP_STATUS_NOT_EQUIVALENT = 1,
  ELP_STATUS_NO_SOLUTION = 3,
  ELP_STATUS_NULL_ARGUMENT = 10,
  ELP_STATUS_INVALID_UTF8 = 11,
  ELP_STATUS_PARSE_ERROR = 12,
  ELP_STATUS_GUARD_EXCEEDED = 13,
  ELP_STATUS_WRONG_PROGRAM_KIND = 14,
  ELP_STATUS_QBF_ERROR = 15,
  ELP_STATUS_ASSUMPTION_VIOLATED = 16,
  ELP_STATUS_INTERNAL = 17,
} ElpStatus;

/**
 * Opaque program handle.
 */
typedef struct ElpProgram ElpProgram;

typedef struct ElpLimits {
  uint32_t max_atoms;
  uint32_t max_eliterals;
  bool force;
} ElpLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The guard defaults used by the command line tool.
 */
struct ElpLimits elp_limits_default(void);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next `elp_*` call on the same thread.
 */
const char *elp_last_error(void);

/**
 * Parses `source`; on success `*out` owns a new handle.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ElpStatus elp_program_parse(const char *source, enum ElpMode mode, struct ElpProgram **out);

/**
 * # Safety
 * `p` must come from this library and not be freed twice. Null is ignored.
 */
void elp_program_free(struct ElpProgram *p);

/**
 * # Safety
 * `p` must be a live handle or null.
 */
size_t elp_program_atom_count(const struct ElpProgram *p);

/**
 * Size of the epistemic literal domain (0 for plain programs).
 *
 * # Safety
 * `p` must be a live handle or null.
 */
size_t elp_program_eliteral_count(const struct ElpProgram *p);

/**
 * Program text with `#atoms` / `#eliterals` declarations.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum ElpStatus elp_program_render(const struct ElpProgram *p, char **out);

/**
 * Answer sets of a plain program or the views of an ELP, as JSON.
 * Returns `NoSolution` (with the report still written) when there are none.
 *
 * # Safety
 * `p` must be a live handle, `limits` valid or null, `out` a valid pointer.
 */
enum ElpStatus elp_solve_json(const struct ElpProgram *p,
                              const struct ElpLimits *limits_ptr,
                              char **out);

/**
 * Equivalence verdict with minimal witness, as JSON. The two programs are
 * aligned first. Returns `Ok` or `NotEquivalent`.
 *
 * # Safety
 * `p1`, `p2` must be live handles, `limits` valid or null, `out` a valid pointer.
 */
enum ElpStatus elp_equiv_json(const struct ElpProgram *p1,
                              const struct ElpProgram *p2,
                              enum ElpNotion notion,
                              const struct ElpLimits *limits_ptr,
                              char **out);

/**
 * The sparse UE-function table, as a JSON array in `(guess, facts)` order.
 *
 * # Safety
 * `p` must be a live handle, `limits` valid or null, `out` a valid pointer.
 */
enum ElpStatus elp_uef_json(const struct ElpProgram *p,
                            enum ElpKind view_kind,
                            const struct ElpLimits *limits_ptr,
                            char **out);

/**
 * Truth value of a QDIMACS-style `∃∀∃` formula.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `value` a valid pointer.
 */
enum ElpStatus elp_qbf_eval(const char *source, const struct ElpLimits *limits_ptr, bool *value);

/**
 * Reduces a formula to the program pair; both handles are owned by the caller.
 *
 * # Safety
 * `source` must be a NUL-terminated string, `pi1` and `pi2` valid pointers.
 */
enum ElpStatus elp_qbf_reduce(const char *source,
                              bool allow_unchecked,
                              const struct ElpLimits *limits_ptr,
                              struct ElpProgram **pi1,
                              struct ElpProgram **pi2);

/**
 * # Safety
 * `s` must be a string returned by this library, or null.
 */
void elp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELP_H */
