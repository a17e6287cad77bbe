/* C interface of the measurement post-processing library. Generated; do not edit. */

#ifndef POSTORDER_H
#define POSTORDER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum PoStatus {
  /**
   * Success.
   */
  PoStatus_Ok = 0,
  /**
   * A required pointer argument was null.
   */
  PoStatus_NullArgument = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  PoStatus_InvalidUtf8 = 2,
  /**
   * The input parsed but failed validation, or did not parse at all.
   */
  PoStatus_InvalidInput = 3,
  /**
   * The computation itself reported an error.
   */
  PoStatus_Domain = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  PoStatus_Panic = 5,
} PoStatus;

/**
 * Opaque handle to a validated measurement.
 */
typedef struct PoEvm PoEvm;

/**
 * Opaque handle to a validated finite poset.
 */
typedef struct PoPoset PoPoset;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the most recent failure on this thread. Borrowed: valid
 * until the next failing call on the same thread; do not free.
 */
const char *po_last_error(void);

/**
 * The library version as a static string; do not free.
 */
const char *po_version(void);

/**
 * Frees a string returned through an out-parameter.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library, or null.
 */
void po_string_free(char *s);

/**
 * Parses and validates a measurement from its JSON schema. Returns null on
 * failure (see `po_last_error`); free with `po_evm_free`.
 *
 * # Safety
 * `json` must be null or point to a nul-terminated string.
 */
struct PoEvm *po_evm_parse(const char *json);

/**
 * Frees a measurement handle.
 *
 * # Safety
 * `m` must be a handle from `po_evm_parse`, or null; never freed twice.
 */
void po_evm_free(struct PoEvm *m);

/**
 * Number of outcomes of a measurement; 0 for a null handle.
 *
 * # Safety
 * `m` must be a live handle from `po_evm_parse`, or null.
 */
uintptr_t po_evm_outcomes(const struct PoEvm *m);

/**
 * Dimension of the classical state space carrying the measurement; 0 for a
 * null handle.
 *
 * # Safety
 * `m` must be a live handle from `po_evm_parse`, or null.
 */
uintptr_t po_evm_space_dim(const struct PoEvm *m);

/**
 * Decides the post-processing order between two measurements. On success
 * writes the verdict report (JSON, same schema as the command-line tool)
 * to `out_json`; free it with `po_string_free`.
 *
 * # Safety
 * `m` and `n` must be live handles; `out_json` must point to writable
 * storage for one pointer.
 */
enum PoStatus po_compare(const struct PoEvm *m, const struct PoEvm *n, char **out_json);

/**
 * Exact guessing probability of a JSON-encoded ensemble under a
 * measurement, written to `out_value` as a canonical "p/q" string; free it
 * with `po_string_free`.
 *
 * # Safety
 * `ensemble_json` must be null or nul-terminated; `m` a live handle;
 * `out_value` writable storage for one pointer.
 */
enum PoStatus po_pg(const char *ensemble_json, const struct PoEvm *m, char **out_value);

/**
 * Parses and validates a finite poset from its JSON schema. Returns null
 * on failure; free with `po_poset_free`.
 *
 * # Safety
 * `json` must be null or point to a nul-terminated string.
 */
struct PoPoset *po_poset_parse(const char *json);

/**
 * Frees a poset handle.
 *
 * # Safety
 * `p` must be a handle from this library, or null; never freed twice.
 */
void po_poset_free(struct PoPoset *p);

/**
 * Number of elements of a poset; 0 for a null handle.
 *
 * # Safety
 * `p` must be a live handle, or null.
 */
uintptr_t po_poset_len(const struct PoPoset *p);

/**
 * The 2n-element two-level poset whose order dimension is exactly n.
 * Returns null when n is out of range; free with `po_poset_free`.
 */
struct PoPoset *po_standard_example(uintptr_t n);

/**
 * Exact order dimension with search bound `max_k`, written to
 * `out_dimension`. A poset needing more than `max_k` extensions reports
 * `Domain` (see `po_last_error`).
 *
 * # Safety
 * `p` must be a live handle; `out_dimension` writable storage for one
 * `usize`.
 */
enum PoStatus po_poset_dimension(const struct PoPoset *p,
                                 uintptr_t max_k,
                                 uintptr_t *out_dimension);

/**
 * Hasse diagram of a poset in DOT syntax, written to `out_dot`; free it
 * with `po_string_free`.
 *
 * # Safety
 * `p` must be a live handle; `out_dot` writable storage for one pointer.
 */
enum PoStatus po_poset_dot(const struct PoPoset *p, char **out_dot);

/**
 * Builds the 2n-measurement bit family, decides every pair exactly, and
 * verifies the comparison poset is the standard example with order
 * dimension n. Writes a JSON report to `out_json`; free it with
 * `po_string_free`. Cost grows steeply with n; n ≤ 4 stays fast.
 *
 * # Safety
 * `out_json` must point to writable storage for one pointer.
 */
enum PoStatus po_main1(uintptr_t n, char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POSTORDER_H */
