#ifndef KOSZUL_SDEPTH_H
#define KOSZUL_SDEPTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define KS_OK 0

/**
 * A required pointer argument was null.
 */
#define KS_ERR_NULL 1

/**
 * `n` is outside `1..=31`.
 */
#define KS_ERR_GROUND_SIZE 2

/**
 * A mask has bits set above position `n`.
 */
#define KS_ERR_ELEMENT 3

/**
 * The first set is not contained in the second.
 */
#define KS_ERR_NOT_SUBSET 4

/**
 * The operation needs a non-empty set.
 */
#define KS_ERR_EMPTY 5

/**
 * `(n, k)` is outside `max(1, floor(n/2)) <= k < n`.
 */
#define KS_ERR_OUT_OF_RANGE 6

/**
 * The partial map is not defined at this set.
 */
#define KS_ERR_UNDEFINED 7

/**
 * A summand index is past the end.
 */
#define KS_ERR_INDEX 8

/**
 * An internal invariant failed; please report it.
 */
#define KS_ERR_INTERNAL 9

/**
 * A Rust panic was caught at the boundary.
 */
#define KS_ERR_PANIC 10

/**
 * Opaque handle to a computed decomposition.
 */
typedef struct KsDecomposition KsDecomposition;

/**
 * One summand `m_S K[Z_S]`, as masks.
 */
typedef struct KsSummand {
  /**
   * The squarefree multidegree `S`.
   */
  uint32_t degree;
  /**
   * The free variables `Z_S`.
   */
  uint32_t free_vars;
  /**
   * The generator index set `G(S)`.
   */
  uint32_t generator;
  /**
   * The variable missing from `Z_S`, or 0 when `Z_S = [n]`.
   */
  uint32_t removed;
} KsSummand;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * `ψ(G) = G ∖ {ν(G)}`; `out_pivot` (optional) receives `ν(G)`.
 * Returns `KS_ERR_UNDEFINED` when `ν(G) = 0`.
 *
 * # Safety
 * `out_mask` must be valid for writes; `out_pivot` may be null.
 */
int32_t ks_psi(uint32_t n, uint32_t mask, uint32_t *out_mask, uint32_t *out_pivot);

/**
 * `φ(G) = G ∪ {μ(G) + 1}`; `out_pivot` (optional) receives the added
 * element. Returns `KS_ERR_UNDEFINED` when `μ(G) = n`.
 *
 * # Safety
 * `out_mask` must be valid for writes; `out_pivot` may be null.
 */
int32_t ks_phi(uint32_t n, uint32_t mask, uint32_t *out_mask, uint32_t *out_pivot);

/**
 * `ψ̃(G)`, defined for every non-empty `G`; returns `KS_ERR_EMPTY` otherwise.
 *
 * # Safety
 * `out_mask` must be valid for writes; `out_pivot` may be null.
 */
int32_t ks_psi_tilde(uint32_t n, uint32_t mask, uint32_t *out_mask, uint32_t *out_pivot);

/**
 * `ind_M(G)` for `G ⊆ M ⊆ [n]`.
 *
 * # Safety
 * `out_index` must be valid for writes.
 */
int32_t ks_index(uint32_t n, uint32_t g, uint32_t m, uint32_t *out_index);

/**
 * Builds the decomposition of `M(n, k)`. Returns null on failure and, if
 * `status` is non-null, stores the reason there.
 *
 * # Safety
 * `status` must be null or valid for writes.
 */
struct KsDecomposition *ks_decomposition_new(uint32_t n, uint32_t k, int32_t *status);

/**
 * Releases a handle from `ks_decomposition_new`; null is a no-op.
 *
 * # Safety
 * `d` must be null or a live handle not yet freed.
 */
void ks_decomposition_free(struct KsDecomposition *d);

/**
 * Number of summands; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
size_t ks_decomposition_len(const struct KsDecomposition *d);

/**
 * `min |Z_S|` over the summands; 0 for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
uint32_t ks_decomposition_depth(const struct KsDecomposition *d);

/**
 * Copies summand `idx` (ordered by `|S|`, then squashed order) into `out`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be valid for writes.
 */
int32_t ks_decomposition_summand(const struct KsDecomposition *d,
                                 size_t idx,
                                 struct KsSummand *out);

/**
 * The decomposition as a JSON document; free with `ks_string_free`.
 * Returns null for a null handle.
 *
 * # Safety
 * `d` must be null or a live handle.
 */
char *ks_decomposition_to_json(const struct KsDecomposition *d);

/**
 * Releases a string returned by this library; null is a no-op.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void ks_string_free(char *s);

/**
 * Runs the full verification (Hilbert identity, triangle condition, exact
 * rank) for `M(n, k)`. `out_passed` receives whether every check held and
 * `out_depth` (optional) the verified lower bound on Stanley depth.
 *
 * # Safety
 * `out_passed` must be valid for writes; `out_depth` may be null.
 */
int32_t ks_verify_stanley(uint32_t n, uint32_t k, bool *out_passed, uint32_t *out_depth);

/**
 * Static description of a status code; never null, never freed.
 */
const char *ks_status_message(int32_t status);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KOSZUL_SDEPTH_H */
