#ifndef SSCS_SSCS_H
#define SSCS_SSCS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SSCS_API __declspec(dllexport)
#else
#define SSCS_API __attribute__((visibility("default")))
#endif

typedef struct sscs_graph sscs_graph;

typedef enum sscs_status {
    SSCS_OK = 0,
    SSCS_ERR_PARSE = 1,        /* malformed JSON or schema violation */
    SSCS_ERR_INVALID = 2,      /* graph fails validation (e.g. unreachable nodes) */
    SSCS_ERR_PRECONDITION = 3, /* operation needs a different graph shape */
    SSCS_ERR_INTERNAL = 4,     /* self-inconsistency detected */
    SSCS_ERR_ARGUMENT = 5      /* null pointer or bad option */
} sscs_status;

typedef enum sscs_mode { SSCS_MODE_PAPER = 1, SSCS_MODE_EXACT = 2, SSCS_MODE_BOTH = 3 } sscs_mode;

typedef enum sscs_shape_kind { SSCS_SHAPE_HDAG = 0, SSCS_SHAPE_DAG = 1, SSCS_SHAPE_CYCLIC = 2 } sscs_shape_kind;

typedef struct sscs_analyze_options {
    sscs_mode mode;
    int verify;
    int dump_symcm;
    int pretty;
    uint64_t seed;
    uint64_t budget;
} sscs_analyze_options;

/* Defaults: both modes, no verification, seed 0, budget 4000. */
SSCS_API void sscs_analyze_options_init(sscs_analyze_options* options);

SSCS_API sscs_status sscs_graph_parse(const char* json, size_t length, sscs_graph** out);
SSCS_API void sscs_graph_free(sscs_graph* graph);

/* Message for the last failed call on this thread; never NULL. */
SSCS_API const char* sscs_last_error(void);

SSCS_API sscs_status sscs_graph_shape(const sscs_graph* graph, sscs_shape_kind* kind, int* input_connected);
SSCS_API sscs_status sscs_scs_dim(const sscs_graph* graph, size_t* dim);

/* k_first is -1 when no layer can vanish. mode must be PAPER or EXACT. */
SSCS_API sscs_status sscs_sscs_dim(const sscs_graph* graph, sscs_mode mode, size_t* dim, long* k_first);

/* JSON report; *self_consistent is 0 when verification found a failure. */
SSCS_API sscs_status sscs_analyze(const sscs_graph* graph, const sscs_analyze_options* options, char** report,
                                  int* self_consistent);

SSCS_API sscs_status sscs_export_dot(const sscs_graph* graph, int subgraph, sscs_mode mode, char** dot);
SSCS_API sscs_status sscs_symcm_dump(const sscs_graph* graph, char** text);

/* Releases strings returned by this library. */
SSCS_API void sscs_string_free(char* text);

SSCS_API const char* sscs_version(void);

#ifdef __cplusplus
}
#endif

#endif
