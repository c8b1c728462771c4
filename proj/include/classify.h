#ifndef CLASSIFY_H
#define CLASSIFY_H

/*
 * C interface to the product-quotient surface classification engine.
 * All functions return pq_status; on failure pq_last_error() describes the
 * problem. Strings returned through char** are heap-allocated and must be
 * released with pq_string_free(). Handles are opaque.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PQ_OK = 0,
  PQ_INVARIANT_VIOLATION = 1,
  PQ_INPUT_ERROR = 2,
  PQ_CAP_EXCEEDED = 3
} pq_status;

typedef struct pq_catalog pq_catalog;
typedef struct pq_report pq_report;

/* Bundled group catalog (the classification's groups plus generated
 * families with a per-order completeness ledger). */
pq_status pq_catalog_builtin(pq_catalog **out);

/* Catalog from a file in the line-oriented stanza format. */
pq_status pq_catalog_load(const char *path, pq_catalog **out);

void pq_catalog_free(pq_catalog *cat);

typedef struct {
  const int *k_squared; /* list of 2/4/6; NULL means all three */
  int n_k;
  int64_t coset_limit;  /* 0 picks the default 1000000 */
  int64_t orbit_cap;    /* 0 picks the default */
  int64_t index_bound;  /* 0 picks the default 32 */
  int threads;          /* 0: CLASSIFY_THREADS env or hardware */
  int compute_pi1;      /* nonzero: compute H1 / pi1 data per family */
} pq_run_options;

/* Full pipeline: nodal triples, family classes, fundamental group data. */
pq_status pq_run(const pq_catalog *cat, const pq_run_options *opts, pq_report **out);

int pq_report_row_count(const pq_report *rep);

/* format: "tsv", "json" or "md". */
pq_status pq_report_emit(const pq_report *rep, const char *format, char **out_text);

/* Long-form per-family records. */
pq_status pq_report_families(const pq_report *rep, char **out_text);

/* Sweep ledger: excluded orders, best-effort orders, per-triple failures. */
pq_status pq_report_ledger(const pq_report *rep, char **out_text);

void pq_report_free(pq_report *rep);

/* Admissible signatures with their alpha values, one per line. */
pq_status pq_signatures(int k_squared, char **out_text);

/* Nodal triples only (no family classes), tab-separated. */
pq_status pq_triples(const pq_catalog *cat, int k_squared, char **out_text);

/* Quick internal consistency checks; PQ_OK iff all pass. */
pq_status pq_selftest(char **out_text);

const char *pq_last_error(void);
void pq_string_free(char *text);
const char *pq_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CLASSIFY_H */
