#ifndef SCHREIER_SCHREIER_H
#define SCHREIER_SCHREIER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SCH_API __declspec(dllexport)
#else
#define SCH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Codes 0-4 double as CLI exit codes. */
typedef enum {
  SCH_OK = 0,
  SCH_ERR_INTERNAL = 1,
  SCH_ERR_CONFIG = 2,
  SCH_ERR_VERIFICATION = 3,
  SCH_ERR_RESOURCE_CAP = 4,
  SCH_ERR_INVALID_ARGUMENT = 5,
  SCH_ERR_DOMAIN = 6,
  SCH_ERR_CAPABILITY = 7
} sch_status;

/* Message of the last failed call on this thread ("" after a success). */
SCH_API const char* sch_last_error(void);
/* Frees any char* returned by this library. */
SCH_API void sch_string_free(char* s);

/* Experiments. config_json is {kind, target, seed, params, out}. On SCH_OK
 * *passed tells whether every check held; *summary_json (optional) receives
 * the summary written to summary.json. */
SCH_API sch_status sch_run_experiment(const char* config_json, const char* out_dir, unsigned jobs, int* passed,
                                      char** summary_json);
SCH_API sch_status sch_config_digest(const char* config_json, char** hex);

/* Finite Schreier graphs. Keys are the canonical point strings. */
typedef struct sch_graph sch_graph;

SCH_API sch_status sch_grigorchuk_level_graph(int level, sch_graph** out);
SCH_API sch_status sch_lamplighter_coset_graph(int64_t p, int d, int64_t m, sch_graph** out);
SCH_API sch_status sch_cycle_graph(int64_t m, sch_graph** out);
SCH_API void sch_graph_free(sch_graph* g);

SCH_API sch_status sch_graph_size(const sch_graph* g, size_t* size);
SCH_API sch_status sch_graph_key(const sch_graph* g, size_t vertex, char** key);
SCH_API sch_status sch_graph_diameter(const sch_graph* g, int64_t* diameter);
SCH_API sch_status sch_graph_ball_size(const sch_graph* g, const char* key, int64_t radius, uint64_t* size);
/* vol[n] = largest |B(x, n)| over all vertices, n = 0..n_max; vol holds n_max + 1 entries. */
SCH_API sch_status sch_graph_vol_table(const sch_graph* g, int64_t n_max, uint64_t* vol);
SCH_API sch_status sch_graph_to_dot(const sch_graph* g, const char* name, char** dot);

/* Grigorchuk group. Words over {a,b,c,d} act right to left. */
SCH_API sch_status sch_grigorchuk_act(const char* g, const char* vertex, char** image);
SCH_API sch_status sch_grigorchuk_is_trivial(const char* g, int* trivial);
SCH_API sch_status sch_grigorchuk_displacement(const char* g, int max_level, int* level, char** vertex,
                                               int64_t* displacement, int64_t* diameter);

/* Lamplighter certified controlled-diameter ratio for (p, d). */
SCH_API sch_status sch_lamplighter_certified_ratio(int64_t p, int d, double* ratio);

/* Houghton group H_r. Vertex keys are integers for r = 2, else "i:p" or "0". */
typedef struct sch_houghton sch_houghton;

SCH_API sch_status sch_houghton_word(int r, const int* letters, size_t length, sch_houghton** out);
SCH_API sch_status sch_houghton_gamma(int r, int ray, int n, sch_houghton** out);
SCH_API sch_status sch_houghton_from_json(const char* json, sch_houghton** out);
SCH_API sch_status sch_houghton_compose(const sch_houghton* g, const sch_houghton* h, sch_houghton** out);
SCH_API sch_status sch_houghton_invert(const sch_houghton* g, sch_houghton** out);
SCH_API void sch_houghton_free(sch_houghton* g);
SCH_API sch_status sch_houghton_to_json(const sch_houghton* g, char** json);
SCH_API sch_status sch_houghton_act(const sch_houghton* g, const char* vertex, char** image);
SCH_API sch_status sch_houghton_is_identity(const sch_houghton* g, int* identity);
SCH_API sch_status sch_houghton_pair_bound(int r, int n, int64_t* count, int64_t* radius);

/* Growth analysis. */
SCH_API sch_status sch_fit_loglog(const double* xs, const double* ys, size_t count, double* slope, double* stderr_);
/* Partition condition for f(n) = n^alpha over the given C1 candidates. */
SCH_API sch_status sch_partition_check_power(double alpha, const double* candidates, size_t count, int* holds,
                                             double* c1);

#ifdef __cplusplus
}
#endif

#endif
