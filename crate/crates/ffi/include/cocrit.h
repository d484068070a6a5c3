#ifndef COCRIT_H
#define COCRIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CocritStatus {
  COCRIT_STATUS_OK = 0,
  COCRIT_STATUS_NULL_POINTER = 1,
  COCRIT_STATUS_INVALID_UTF8 = 2,
  COCRIT_STATUS_PARSE = 3,
  COCRIT_STATUS_INVALID_PARAMS = 4,
  /*
   A search hit its node or time cap; the answer is unknown.
   */
  COCRIT_STATUS_BUDGET_EXCEEDED = 5,
  /*
   A checked invariant failed or the library panicked.
   */
  COCRIT_STATUS_INTERNAL = 6,
} CocritStatus;

/*
 Opaque graph handle.
 */
typedef struct CocritGraph CocritGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread; empty after a success.
 */
const char *cocrit_last_error(void);

/*
 Library version, static storage.
 */
const char *cocrit_version(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void cocrit_string_free(char *s);

/*
 Parse a graph6 string into a new handle.

 # Safety
 `text` must be a nul-terminated string; `out` must be writable.
 */
enum CocritStatus cocrit_graph_from_graph6(const char *text, struct CocritGraph **out);

/*
 Build the extremal construction for `(t, k, n)`.

 # Safety
 `out` must be writable.
 */
enum CocritStatus cocrit_construct(size_t t, size_t k, size_t n, struct CocritGraph **out);

/*
 # Safety
 `g` must be null or a live handle from this library.
 */
void cocrit_graph_free(struct CocritGraph *g);

/*
 Number of vertices; 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t cocrit_graph_order(const struct CocritGraph *g);

/*
 Number of edges; 0 for a null handle.

 # Safety
 `g` must be null or a live handle.
 */
size_t cocrit_graph_edge_count(const struct CocritGraph *g);

/*
 # Safety
 `g` must be a live handle; `out` must be writable. Free the result with
 `cocrit_string_free`.
 */
enum CocritStatus cocrit_graph_to_graph6(const struct CocritGraph *g, char **out);

/*
 `*out = 1` if every colouring of `g` has a red `K_t` or a blue tree on
 `k` vertices, `0` if some colouring has neither.

 # Safety
 `g` must be a live handle; `out` must be writable.
 */
enum CocritStatus cocrit_arrows(const struct CocritGraph *g,
                                size_t t,
                                size_t k,
                                uint64_t node_cap,
                                double time_cap_secs,
                                int32_t *out);

/*
 Verify co-criticality. `*verdict` is 1 or 0; the full report is written
 as JSON to `*report_json` (may be null to skip). An indeterminate run
 returns `COCRIT_STATUS_BUDGET_EXCEEDED` and still writes the report.

 # Safety
 `g` must be a live handle; `verdict` must be writable; `report_json`
 must be null or writable.
 */
enum CocritStatus cocrit_is_cocritical(const struct CocritGraph *g,
                                       size_t t,
                                       size_t k,
                                       uint64_t node_cap,
                                       double time_cap_secs,
                                       size_t jobs,
                                       int32_t *verdict,
                                       char **report_json);

/*
 Percolation run on the cross graph of the construction's distinguished
 colouring; the run (certificate and trace) is written as JSON.

 # Safety
 `out` must be writable.
 */
enum CocritStatus cocrit_percolate_construction(size_t t, size_t k, size_t n, size_t q, char **out);

/*
 JSON record of the construction: graph6, roles and the colouring.

 # Safety
 `out` must be writable.
 */
enum CocritStatus cocrit_construction_json(size_t t, size_t k, size_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COCRIT_H */
