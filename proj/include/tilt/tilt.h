/* C interface to the tilting-module engine for elementary abelian p-groups.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning tilt_status report failure details through
 * tilt_last_error(), which is thread-local.  Strings handed out by the
 * library must be released with tilt_string_free().
 */

#ifndef TILT_TILT_H
#define TILT_TILT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    TILT_OK = 0,
    TILT_ERR_INVALID = 1, /* bad arguments or configuration */
    TILT_ERR_RUNTIME = 2  /* internal failure */
} tilt_status;

typedef struct tilt_field tilt_field;
typedef struct tilt_table tilt_table;
typedef struct tilt_module tilt_module;

/* Message for the last failing call on this thread; never NULL. */
const char* tilt_last_error(void);

void tilt_string_free(char* s);

/* --- fields: F_q with q = p^k ----------------------------------------- */

tilt_status tilt_field_create(int p, int k, tilt_field** out);
void tilt_field_destroy(tilt_field* f);
int tilt_field_p(const tilt_field* f);
int tilt_field_k(const tilt_field* f);

/* --- tilting tables ----------------------------------------------------
 * lambda is either NULL (automatic choice 1, g, g^2, ..., requires k >= r)
 * or an array of r field element codes that must be F_p-independent. */

tilt_status tilt_table_create(tilt_field* f, int r, const int* lambda, tilt_table** out);
void tilt_table_destroy(tilt_table* t);

int tilt_table_size(const tilt_table* t); /* p^r entries T_0 .. T_(p^r - 1) */
int tilt_table_entry_dim(const tilt_table* t, int i);
tilt_status tilt_table_entry_json(const tilt_table* t, int i, char** out);
/* One-line JSON manifest: field, lambda, dimensions. */
tilt_status tilt_table_manifest_json(const tilt_table* t, char** out);

/* --- modules ------------------------------------------------------------ */

tilt_status tilt_module_from_json(const char* json, tilt_module** out);
tilt_status tilt_module_to_json(const tilt_module* m, char** out);
void tilt_module_destroy(tilt_module* m);
int tilt_module_dim(const tilt_module* m);

/* --- conjecture --------------------------------------------------------
 * Verdict for S (x) X against the table's tilting ideal, as one-line JSON:
 * {"input_id", "status", "tilt_multiset", "projective_rank",
 *  "remainder_dim"}. */

tilt_status tilt_check_membership(const tilt_table* t, const tilt_module* x,
                                  const char* input_id, char** verdict_json);

/* Fuzz battery; family in {"random", "loewy2", "uniserial",
 * "tensor-closure"}.  sink_dir may be NULL (candidates not persisted).
 * candidates receives the number of persisted-or-found counterexample
 * candidates. */
tilt_status tilt_fuzz(const tilt_table* t, uint64_t seed, int count, const char* family,
                      int max_dim, const char* sink_dir, int jobs, char** report_json,
                      int* candidates);

/* Named verification suite; see tilt_suite_names for the choices.  pass
 * receives 1/0; diagnostics_json a one-line JSON report. */
tilt_status tilt_verify(const tilt_table* t, const char* suite, char** diagnostics_json,
                        int* pass);

/* NULL-terminated array of the known suite names; static storage. */
const char* const* tilt_suite_names(void);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TILT_TILT_H */
