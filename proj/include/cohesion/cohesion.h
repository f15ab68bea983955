#ifndef COHESION_H
#define COHESION_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COHESION_API __declspec(dllexport)
#else
#define COHESION_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cohesion_graph cohesion_graph;

typedef enum {
    COHESION_OK = 0,
    COHESION_ERR_PARSE = 1,
    COHESION_ERR_VALIDATION = 2,
    COHESION_ERR_DOMAIN = 3,
    COHESION_ERR_RESOURCE = 4,
    COHESION_ERR_CONVERGENCE = 5,
    COHESION_ERR_IO = 6,
    COHESION_ERR_ARGUMENT = 7, /* null pointer or bad enum */
    COHESION_ERR_INTERNAL = 8,
} cohesion_status;

typedef enum {
    COHESION_KIND_BINARY = 0,
    COHESION_KIND_ROWNORM = 1,
    COHESION_KIND_SYMNORM = 2,
} cohesion_kind;

typedef enum {
    COHESION_TIES_MUTUAL = 0, /* directed input: keep reciprocated ties only */
    COHESION_TIES_ANY = 1,
} cohesion_tie_policy;

typedef struct {
    size_t n;
    double lambda2;
    double mean_distance;
    size_t diameter;
    double mean_distance_bound;
    int mean_distance_bound_ok;
    double diameter_bound;
    int diameter_bound_ok;
    size_t kappa;
    size_t k_min;
    int complete; /* cut comparisons skipped */
    int lambda2_le_kappa;
    int kappa_le_kmin;
    int all_ok;
} cohesion_bound_report;

typedef struct {
    double mean_distance;
    size_t diameter;
    int finite; /* 0 when disconnected */
} cohesion_distance_summary;

typedef struct {
    double t;
    double Z;
    double entropy;
    double F;
    double Q;
    double V;
    double eta;
} cohesion_tradeoff;

COHESION_API const char* cohesion_version(void);
COHESION_API const char* cohesion_status_name(cohesion_status status);

/* Message of the last failed call on this thread; "" if none. */
COHESION_API const char* cohesion_last_error(void);

/* "binary", "rownorm", "symnorm" (long forms accepted). */
COHESION_API cohesion_status cohesion_kind_parse(const char* name, cohesion_kind* out);

COHESION_API cohesion_status cohesion_graph_from_edge_list(const char* text, int directed,
                                                         cohesion_tie_policy policy,
                                                         cohesion_graph** out);
COHESION_API cohesion_status cohesion_graph_read_file(const char* path, int directed,
                                                    cohesion_tie_policy policy, cohesion_graph** out);
/* Generator spec such as "clique:24" or "kearns_rewired:0.1". */
COHESION_API cohesion_status cohesion_graph_generate(const char* spec, uint64_t seed,
                                                   cohesion_graph** out);
COHESION_API void cohesion_graph_free(cohesion_graph* g);

COHESION_API size_t cohesion_graph_node_count(const cohesion_graph* g);
COHESION_API size_t cohesion_graph_edge_count(const cohesion_graph* g);
COHESION_API cohesion_status cohesion_graph_to_edge_list(const cohesion_graph* g, char** out);
COHESION_API cohesion_status cohesion_graph_write_file(const cohesion_graph* g, const char* path);
COHESION_API cohesion_status cohesion_graph_component_count(const cohesion_graph* g, size_t* out);

COHESION_API cohesion_status cohesion_lambda2(const cohesion_graph* g, cohesion_kind kind, double* out);
/* Writes the n ascending eigenvalues; capacity must be at least n. */
COHESION_API cohesion_status cohesion_spectrum(const cohesion_graph* g, cohesion_kind kind,
                                             double* values, size_t capacity);
COHESION_API cohesion_status cohesion_spectrum_csv(const cohesion_graph* g, cohesion_kind kind, char** out);
COHESION_API cohesion_status cohesion_laplacian_csv(const cohesion_graph* g, cohesion_kind kind, char** out);
COHESION_API cohesion_status cohesion_bounds(const cohesion_graph* g, cohesion_bound_report* out);
COHESION_API cohesion_status cohesion_distances(const cohesion_graph* g, cohesion_distance_summary* out);
COHESION_API cohesion_status cohesion_vertex_connectivity(const cohesion_graph* g, size_t* out);
COHESION_API cohesion_status cohesion_tradeoff_metrics(const cohesion_graph* g, cohesion_kind kind,
                                                     double t, cohesion_tradeoff* out);

/* y(t) = exp(-L t) y0 at each of the `count` times; out holds count * n
   values, row by row. */
COHESION_API cohesion_status cohesion_diffuse(const cohesion_graph* g, cohesion_kind kind,
                                            const double* y0, size_t n, const double* times,
                                            size_t count, double* out);
COHESION_API cohesion_status cohesion_convergence_time(const cohesion_graph* g, cohesion_kind kind,
                                                     const double* y0, size_t n, double epsilon,
                                                     double* out);

/* Newline-separated experiment ids. */
COHESION_API cohesion_status cohesion_experiment_ids(char** out);

/* Runs the experiment described by the JSON config. When out_dir is not
   NULL, report.json and every plot file are written there. workers = 0 keeps
   the config's "workers" (itself defaulting to the hardware concurrency). targets_met and wall_seconds may be NULL. */
COHESION_API cohesion_status cohesion_run_experiment(const char* config_json, const char* out_dir,
                                                   size_t workers, char** report_json,
                                                   int* targets_met, double* wall_seconds);

COHESION_API void cohesion_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
