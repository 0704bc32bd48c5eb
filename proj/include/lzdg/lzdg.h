/* lzdg - zero-divisor graphs of Lipschitz quaternion rings Z_n[i,j,k]
 * and 2x2 matrix rings M2(Z_{p^s}).
 *
 * C interface for the shared library. All functions return an lzdg_rc
 * status code; results are returned through out-parameters. Handles are
 * opaque and must be released with the matching *_free function.
 * Functions never throw; the last failure detail for the calling thread
 * is available via lzdg_last_error().
 */

#ifndef LZDG_H
#define LZDG_H

#include <stdint.h>
#include <stddef.h>

#if defined(_WIN32)
#define LZDG_API __declspec(dllexport)
#else
#define LZDG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lzdg_rc {
    LZDG_OK = 0,
    LZDG_E_CHECK = 1,    /* a verification check failed */
    LZDG_E_INVALID = 2,  /* invalid argument or unusable input */
    LZDG_E_RESOURCE = 3, /* a configured size cap was exceeded */
    LZDG_E_IO = 4,       /* file could not be written or read */
    LZDG_E_INTERNAL = 5  /* internal invariant violated; report a bug */
} lzdg_rc;

/* Opaque handles. */
typedef struct lzdg_graph_s lzdg_graph_t;
typedef struct lzdg_json_s lzdg_json_t;

/* Library version string, e.g. "1.0.0". */
LZDG_API const char* lzdg_version(void);

/* Static description of a status code. */
LZDG_API const char* lzdg_strerror(int rc);

/* Detail message for the most recent failure on this thread ("" if none). */
LZDG_API const char* lzdg_last_error(void);

/* ---- graph construction ----
 * Builds the zero-divisor graph bundle for one ring. Small rings get a
 * full vertex-level graph plus twin classes; larger rings within the
 * element cap get class-level data only. element_cap = 0 selects the
 * default (1000000). threads = 0 selects the hardware thread count.
 */
LZDG_API lzdg_rc lzdg_graph_build_quat(uint64_t n, uint32_t threads,
                                       uint64_t element_cap,
                                       lzdg_graph_t** out);
LZDG_API lzdg_rc lzdg_graph_build_mat(uint32_t p, uint32_t s, uint32_t threads,
                                      uint64_t element_cap,
                                      lzdg_graph_t** out);
LZDG_API void lzdg_graph_free(lzdg_graph_t* g);

LZDG_API lzdg_rc lzdg_graph_vertices(const lzdg_graph_t* g, uint64_t* out);
LZDG_API lzdg_rc lzdg_graph_edges(const lzdg_graph_t* g, uint64_t* out);
LZDG_API lzdg_rc lzdg_graph_classes(const lzdg_graph_t* g, uint64_t* out);

/* Summary statistics as a JSON object (see README for the schema). */
LZDG_API lzdg_rc lzdg_graph_stats_json(const lzdg_graph_t* g,
                                       lzdg_json_t** out);

/* Writes one export file. format is "dot", "json" or "csv". The dot and
 * json formats need the vertex-level graph and fail with LZDG_E_RESOURCE
 * for rings that were built class-level only; csv always works. */
LZDG_API lzdg_rc lzdg_graph_export(const lzdg_graph_t* g, const char* format,
                                   const char* path);

/* ---- domination ----
 * Exact minimum dominating set of the undirected zero-divisor graph,
 * computed on the twin-compressed instance by branch and bound.
 * class_cap = 0 selects the default (512). The result JSON object is
 * {"n","ring","gamma","witness","elapsed_ms","optimal"}.
 */
LZDG_API lzdg_rc lzdg_domination_exact_quat(uint64_t n, uint32_t class_cap,
                                            uint32_t threads,
                                            lzdg_json_t** out);
LZDG_API lzdg_rc lzdg_domination_exact_mat(uint32_t p, uint32_t s,
                                           uint32_t class_cap,
                                           uint32_t threads,
                                           lzdg_json_t** out);

/* Constructive dominating sets: the p+1 element set p^{s-1} a^t a for
 * M2(Z_{p^s}) with p odd, and its CRT composition for Z_n[i,j,k]. The
 * result JSON lists the elements, the set size and whether the set was
 * verified dominating against the full graph. */
LZDG_API lzdg_rc lzdg_domination_construct_quat(uint64_t n, lzdg_json_t** out);
LZDG_API lzdg_rc lzdg_domination_construct_mat(uint32_t p, uint32_t s,
                                               lzdg_json_t** out);

/* ---- automorphisms ----
 * Full automorphism group of the compressed graph of Z_{2^s}[i,j,k] by
 * exhaustive backtracking search, with the structural stabilization and
 * pairing checks. Result JSON: {"s","compressed_vertices","aut_order",
 * "predicted_order","reg_order","full_aut_order_product","lemma45_pass",
 * "lemma46_pass"} where the two big orders are decimal strings. */
LZDG_API lzdg_rc lzdg_aut_summary(uint32_t s, lzdg_json_t** out);

/* ---- verification suite ----
 * Runs every check up to max_s (use 5 for the full suite). Returns
 * LZDG_OK when all non-skipped checks pass, LZDG_E_CHECK otherwise; the
 * report JSON is produced in both cases. A nonzero inject_failure
 * corrupts one expected value so callers can confirm that failures are
 * detected and propagated; production runs pass 0. */
LZDG_API lzdg_rc lzdg_verify(uint32_t max_s, uint32_t threads, uint64_t seed,
                             uint32_t inject_failure, lzdg_json_t** out);

/* ---- JSON result access ---- */
LZDG_API const char* lzdg_json_str(const lzdg_json_t* j);
LZDG_API void lzdg_json_free(lzdg_json_t* j);

#ifdef __cplusplus
}
#endif

#endif /* LZDG_H */
