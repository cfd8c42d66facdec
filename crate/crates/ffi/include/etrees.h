#ifndef ETREES_H
#define ETREES_H

#include <stddef.h>
#include <stdint.h>

/**
 * Result codes of every fallible call.
 */
typedef enum EtreesStatus {
  ETREES_STATUS_OK = 0,
  ETREES_STATUS_NULL_POINTER = 1,
  ETREES_STATUS_INVALID_ARGUMENT = 2,
  ETREES_STATUS_PARSE = 3,
  ETREES_STATUS_INVALID_TREE = 4,
  ETREES_STATUS_NUMERICAL = 5,
  ETREES_STATUS_PANIC = 6,
} EtreesStatus;

/**
 * Opaque tree handle.
 */
typedef struct EtreesTree EtreesTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library; valid until the next call.
 */
const char *etrees_last_error(void);

/**
 * Parses a NUL-terminated edge list.
 *
 * # Safety
 * `text` must be a valid C string and `out` a valid pointer.
 */
enum EtreesStatus etrees_tree_parse(const char *text, struct EtreesTree **out);

/**
 * Builds the extremal tree on `n` vertices with maximum degree `d + 1`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EtreesStatus etrees_extremal_tree(size_t n, size_t d, struct EtreesTree **out);

/**
 * Releases a tree. Null is accepted.
 *
 * # Safety
 * `tree` must come from this library and not be used afterwards.
 */
void etrees_tree_free(struct EtreesTree *tree);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `tree` must be null or a live handle.
 */
size_t etrees_tree_vertex_count(const struct EtreesTree *tree);

/**
 * Edge-list serialization.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_tree_to_edge_list(const struct EtreesTree *tree, char **out);

/**
 * Canonical code as a parenthesized string.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_canonical_code(const struct EtreesTree *tree, char **out);

/**
 * Hosoya index as a decimal string, since it overflows any fixed width.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_hosoya(const struct EtreesTree *tree, char **out);

/**
 * Energy from the eigenvalues of the adjacency matrix.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_energy_spectral(const struct EtreesTree *tree, double *out);

/**
 * Energy through the Coulson integral with absolute tolerance `tolerance`.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_energy_coulson(const struct EtreesTree *tree,
                                        double tolerance,
                                        double *out);

/**
 * `tau(T, x)` with the tree rooted at `root`.
 *
 * # Safety
 * `tree` must be a live handle and `out` a valid pointer.
 */
enum EtreesStatus etrees_tau(const struct EtreesTree *tree, size_t root, double x, double *out);

/**
 * The growth constant `alpha_d` and the bound on its truncation error.
 *
 * # Safety
 * `value` must be valid; `error_bound` may be null.
 */
enum EtreesStatus etrees_alpha(size_t d, double precision, double *value, double *error_bound);

/**
 * Releases a string returned by the library. Null is accepted.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void etrees_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ETREES_H */
