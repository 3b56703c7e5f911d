#ifndef PANTSCX_H
#define PANTSCX_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PantscxFormat {
  PANTSCX_FORMAT_TEXT = 0,
  PANTSCX_FORMAT_DOT = 1,
} PantscxFormat;

typedef enum PantscxStatus {
  PANTSCX_STATUS_OK = 0,
  PANTSCX_STATUS_NULL_ARGUMENT = 1,
  PANTSCX_STATUS_DOMAIN = 2,
  PANTSCX_STATUS_RESOURCES = 3,
  PANTSCX_STATUS_PARSE = 4,
  PANTSCX_STATUS_MAP = 5,
  PANTSCX_STATUS_INVALID_UTF8 = 6,
  PANTSCX_STATUS_PANIC = 7,
} PantscxStatus;

typedef enum PantscxVerdict {
  PANTSCX_VERDICT_TRIVIAL = 0,
  PANTSCX_VERDICT_NONTRIVIAL_H1 = 1,
  PANTSCX_VERDICT_NONTRIVIAL_FINITE = 2,
  PANTSCX_VERDICT_UNKNOWN = 3,
  PANTSCX_VERDICT_DISCONNECTED = 4,
} PantscxVerdict;

/**
 * Opaque complex handle.
 */
typedef struct PantscxComplex PantscxComplex;

/**
 * Opaque cellular map handle.
 */
typedef struct PantscxMap PantscxMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; valid until the next
 * failing call on the same thread.
 */
const char *pantscx_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void pantscx_string_free(char *s);

/**
 * Number of graphs of type `(g, n)` up to isomorphism.
 *
 * # Safety
 * `count` must be writable.
 */
enum PantscxStatus pantscx_enumerate_count(uint32_t g, uint32_t n, size_t *count);

/**
 * Builds the complex of type `(g, n)`; `threads == 0` uses the global pool.
 *
 * # Safety
 * `out` must be writable; the handle is released with
 * `pantscx_complex_free`.
 */
enum PantscxStatus pantscx_build(uint32_t g,
                                 uint32_t n,
                                 bool decorated,
                                 size_t threads,
                                 struct PantscxComplex **out);

/**
 * Parses the text serialization of a complex.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum PantscxStatus pantscx_complex_parse(const char *text, struct PantscxComplex **out);

/**
 * # Safety
 * `c` must come from this library and not be freed twice.
 */
void pantscx_complex_free(struct PantscxComplex *c);

/**
 * Vertex, edge and cell counts.
 *
 * # Safety
 * `c` must be a live handle; the outputs must be writable.
 */
enum PantscxStatus pantscx_complex_counts(const struct PantscxComplex *c,
                                          size_t *vertices,
                                          size_t *edges,
                                          size_t *cells);

/**
 * Serializes a complex; free the result with `pantscx_string_free`.
 * Returns null on failure.
 *
 * # Safety
 * `c` must be a live handle.
 */
char *pantscx_complex_serialize(const struct PantscxComplex *c, enum PantscxFormat format);

/**
 * Rank of the first homology group.
 *
 * # Safety
 * `c` must be a live handle and `betti` writable.
 */
enum PantscxStatus pantscx_complex_betti1(const struct PantscxComplex *c, size_t *betti);

/**
 * Decides simple connectedness. `detail` receives the peak coset count for
 * a trivial verdict, the first Betti number, the group order, the coset cap
 * or the component count, according to `verdict`.
 *
 * # Safety
 * `c` must be a live handle; the outputs must be writable.
 */
enum PantscxStatus pantscx_check_simply_connected(const struct PantscxComplex *c,
                                                  size_t max_cosets,
                                                  enum PantscxVerdict *verdict,
                                                  size_t *detail);

/**
 * The contraction map from type `(g, n)` to `(g, n - 1)`.
 *
 * # Safety
 * `out` must be writable; release with `pantscx_map_free`.
 */
enum PantscxStatus pantscx_map_phi(uint32_t g, uint32_t n, struct PantscxMap **out);

/**
 * The gluing map from type `(g - 1, 2)` to `(g, 0)`.
 *
 * # Safety
 * `out` must be writable; release with `pantscx_map_free`.
 */
enum PantscxStatus pantscx_map_psi(uint32_t g, struct PantscxMap **out);

/**
 * # Safety
 * `m` must come from this library and not be freed twice.
 */
void pantscx_map_free(struct PantscxMap *m);

/**
 * Whether every target vertex, edge and cell has a preimage.
 *
 * # Safety
 * `m` must be a live handle and `surjective` writable.
 */
enum PantscxStatus pantscx_map_is_surjective(const struct PantscxMap *m, bool *surjective);

/**
 * Runs the fibration checks; `all_proven` is set when nothing failed or
 * stayed unresolved. The report text is returned through `report` unless
 * it is null; free it with `pantscx_string_free`.
 *
 * # Safety
 * `m` must be a live handle; `all_proven` writable; `report` null or
 * writable.
 */
enum PantscxStatus pantscx_map_check(const struct PantscxMap *m,
                                     size_t max_area,
                                     bool *all_proven,
                                     char **report);

/**
 * Text listing of the map's vertex, edge and cell assignments; free with
 * `pantscx_string_free`. Returns null on failure.
 *
 * # Safety
 * `m` must be a live handle.
 */
char *pantscx_map_serialize(const struct PantscxMap *m);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PANTSCX_H */
