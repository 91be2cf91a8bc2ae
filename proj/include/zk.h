/*
 * C API of libzk: exact (co)homology of moment-angle complexes with respect to
 * coordinate subtorus actions, freeness verdicts with machine-checkable
 * certificates, and combinatorial classification of the underlying complex.
 *
 * All handles are opaque; every string returned through a char** out-parameter
 * is owned by the caller and must be released with zk_string_free(). Functions
 * return ZK_OK on success; on failure zk_last_error() describes the problem
 * for the calling thread.
 */
#ifndef ZK_H
#define ZK_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zk_status {
    ZK_OK = 0,
    ZK_ERROR_INPUT = 1,    /* malformed input or bad arguments */
    ZK_ERROR_RESOURCE = 2, /* computation exceeds configured limits */
    ZK_ERROR_INTERNAL = 3  /* consistency failure; indicates a bug */
} zk_status;

typedef struct zk_complex zk_complex;

const char *zk_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char *zk_last_error(void);

/* Facet-list text format: one facet per line (whitespace-separated vertex
 * labels), '#' comments, optional "vertices:" header for ghost vertices. */
zk_status zk_complex_from_text(const char *text, zk_complex **out);

/* {"vertices": [...], "facets": [[...], ...]} */
zk_status zk_complex_from_json(const char *json, zk_complex **out);

void zk_complex_free(zk_complex *k);

zk_status zk_complex_to_json(const zk_complex *k, char **json_out);

/* torus: "none", "all", or comma-separated vertex labels.
 * max_degree < 0 selects the default truncation (4 * vertex count).
 * with_multidegree != 0 adds the per-multidegree refinement to each row.
 * rational != 0 reports dimensions over the rationals (torsion dropped). */
zk_status zk_cohomology(const zk_complex *k, const char *torus, int max_degree,
                        int with_multidegree, int rational, char **json_out);

/* Freeness verdict for one subtorus, with its certificate. */
zk_status zk_formality(const zk_complex *k, const char *torus, int max_degree,
                       char **json_out);

/* Verdicts for every simplex of the complex. threads <= 0 means one thread. */
zk_status zk_formality_survey(const zk_complex *k, int max_degree, int threads,
                              char **json_out);

/* Missing faces, flag/graph detection, decomposition or obstruction pair. */
zk_status zk_classify(const zk_complex *k, char **json_out);

void zk_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* ZK_H */
