#ifndef CIRCMAP_H
#define CIRCMAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum CmStatus {
  CM_STATUS_OK = 0,
  CM_STATUS_NULL_POINTER = 1,
  CM_STATUS_INVALID_UTF8 = 2,
  CM_STATUS_INVALID_INPUT = 3,
  CM_STATUS_TOO_MANY_CIRCUITS = 4,
  CM_STATUS_NOT_THREE_CONNECTED = 5,
  CM_STATUS_NOT_INDUCED = 6,
  CM_STATUS_PANIC = 7,
} CmStatus;

/**
 * Opaque edge-map handle; owns copies of its source and target.
 */
typedef struct CmEdgeMap CmEdgeMap;

/**
 * Opaque graph handle.
 */
typedef struct CmGraph CmGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a
 * successful call. Owned by the library; valid until the next call.
 */
const char *cm_last_error_message(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void cm_string_free(char *s);

/**
 * Parses a graph from `{"vertices": [...], "edges": [[u, v], ...]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum CmStatus cm_graph_from_json(const char *json, struct CmGraph **out);

/**
 * Builds a catalog graph: `K4`, `K3,3`, `W5`, `prism`, `cube`, `theta3`,
 * `double-bowtie`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CmStatus cm_graph_named(const char *name, struct CmGraph **out);

/**
 * Serializes a graph; free the result with [`cm_string_free`].
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_graph_to_json(const struct CmGraph *graph, char **out);

/**
 * # Safety
 * `graph` must be NULL or a handle not yet freed.
 */
void cm_graph_free(struct CmGraph *graph);

/**
 * Number of vertices; 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
uintptr_t cm_graph_vertex_count(const struct CmGraph *graph);

/**
 * Number of edges; 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
uintptr_t cm_graph_edge_count(const struct CmGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_graph_is_k_connected(const struct CmGraph *graph, uintptr_t k, bool *out);

/**
 * Counts circuits, failing with `TOO_MANY_CIRCUITS` above `max_circuits`.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_graph_circuit_count(const struct CmGraph *graph,
                                     uintptr_t max_circuits,
                                     uintptr_t *out);

/**
 * Parses `{"map": [[[u, v], [x, y]], ...]}` between copies of `source` and
 * `target`.
 *
 * # Safety
 * Both graphs must be live handles; `json` NUL-terminated; `out` writable.
 */
enum CmStatus cm_edge_map_from_json(const struct CmGraph *source,
                                    const struct CmGraph *target,
                                    const char *json,
                                    struct CmEdgeMap **out);

/**
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_edge_map_to_json(const struct CmEdgeMap *map, char **out);

/**
 * A new handle holding a copy of the map's source (`which_target` false)
 * or target graph.
 *
 * # Safety
 * `map` must be a live handle; `out` must be writable.
 */
enum CmStatus cm_edge_map_graph(const struct CmEdgeMap *map,
                                bool which_target,
                                struct CmGraph **out);

/**
 * # Safety
 * `map` must be NULL or a handle not yet freed.
 */
void cm_edge_map_free(struct CmEdgeMap *map);

/**
 * Exhaustively checks that every source circuit maps to a circuit.
 *
 * On a failed check `*passed` is false and, when `witness` is non-NULL, it
 * receives the offending circuit and image as endpoint pairs in JSON.
 *
 * # Safety
 * `map` must be a live handle; `passed` writable; `witness` NULL or writable.
 */
enum CmStatus cm_verify_injection(const struct CmEdgeMap *map,
                                  uintptr_t max_circuits,
                                  bool *passed,
                                  char **witness);

/**
 * As [`cm_verify_injection`], additionally checking preimages of target
 * circuits.
 *
 * # Safety
 * `map` must be a live handle; `passed` writable; `witness` NULL or writable.
 */
enum CmStatus cm_verify_isomorphism(const struct CmEdgeMap *map,
                                    uintptr_t max_circuits,
                                    bool *passed,
                                    char **witness);

/**
 * Recovers the inducing vertex map as a JSON object from source labels to
 * target labels. With `guarded` the source must be 3-connected.
 *
 * # Safety
 * `map` must be a live handle; `lambda_json` writable.
 */
enum CmStatus cm_reconstruct(const struct CmEdgeMap *map, bool guarded, char **lambda_json);

/**
 * The theta-graph to `K_{p,p}` circuit injection for an odd prime `p`.
 *
 * # Safety
 * `out` must be writable.
 */
enum CmStatus cm_theta_counterexample(uint64_t p, struct CmEdgeMap **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CIRCMAP_H */
