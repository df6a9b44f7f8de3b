/* C interface of the DVS laboratory shared library.
 *
 * Experiments go in as a JSON spec string and come back as an opaque result
 * handle that renders to JSON. All functions return a status code; a
 * human-readable message for the last failure on the calling thread is
 * available from dvslab_last_error().
 */
#ifndef DVSLAB_CAPI_H
#define DVSLAB_CAPI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct dvslab_result dvslab_result;

typedef enum dvslab_status {
    DVSLAB_OK = 0,
    DVSLAB_ERR_INVALID_ARGUMENT = 1, /* null pointers, bad parameters */
    DVSLAB_ERR_PARSE = 2,            /* malformed spec JSON */
    DVSLAB_ERR_UNKNOWN_NAME = 3,     /* unknown scheme/game/adversary/... */
    DVSLAB_ERR_INTERNAL = 4
} dvslab_status;

/* Library version string, e.g. "0.1.0". Static storage; do not free. */
const char* dvslab_version(void);

/* Parses and runs an experiment spec. On success stores a result handle in
 * *out_result; the caller owns it and must free it with dvslab_result_free. */
dvslab_status dvslab_run_spec(const char* spec_json, dvslab_result** out_result);

/* Result document as pretty-printed JSON. The pointer stays valid until the
 * result handle is freed. */
const char* dvslab_result_json(const dvslab_result* result);

/* Number of experiments / relation checks in the result. */
size_t dvslab_result_experiment_count(const dvslab_result* result);
size_t dvslab_result_relation_count(const dvslab_result* result);

/* Number of relation checks whose verdict failed. */
size_t dvslab_result_failed_relations(const dvslab_result* result);

void dvslab_result_free(dvslab_result* result);

/* Message for the most recent failure on this thread; empty string if none.
 * Static thread-local storage; do not free. */
const char* dvslab_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* DVSLAB_CAPI_H */
