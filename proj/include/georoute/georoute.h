/*
 * georoute: geographic routing experiments on random unit-disk networks.
 *
 * Every object is an opaque handle created by a *_create / *_run call and
 * released by the matching *_free. Functions that can fail return a
 * geo_status; the message of the most recent failure on the calling thread is
 * available from geo_last_error().
 *
 * Text outputs use the two-call pattern: pass buf=NULL (or a buffer that is
 * too small) to learn the size in *needed, which excludes the terminating
 * NUL; a large enough buffer receives the NUL-terminated text.
 */
#ifndef GEOROUTE_GEOROUTE_H
#define GEOROUTE_GEOROUTE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GEOROUTE_BUILDING_LIBRARY)
#    define GEO_API __declspec(dllexport)
#  else
#    define GEO_API __declspec(dllimport)
#  endif
#else
#  define GEO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum geo_status {
  GEO_OK = 0,
  GEO_ERR_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad value */
  GEO_ERR_BUFFER_TOO_SMALL = 2, /* *needed holds the required size */
  GEO_ERR_RUNTIME = 3,
  GEO_ERR_IO = 4,
  GEO_ERR_OUT_OF_MEMORY = 5
} geo_status;

GEO_API const char* geo_version(void);

/* Thread-local; empty string when nothing has failed yet. */
GEO_API const char* geo_last_error(void);

typedef struct geo_world geo_world;
typedef struct geo_report geo_report;
typedef struct geo_trace geo_trace;

/* ------------------------------------------------------------------------ */
/* Routing parameters shared by sweeps and traces. */

typedef struct geo_params {
  double beta;                /* turn scale, 0 <= beta <= 1 */
  double epsilon;             /* per-neighbor drop probability of gric+ */
  int contour_clamped;        /* nonzero: clamp the contour turn instead of scaling it */
  int disable_out_of_bounds;  /* nonzero: no border failure */
  size_t ltp_backtrack_budget;
} geo_params;

/* ------------------------------------------------------------------------ */
/* Sweeps */

typedef struct geo_sweep_config {
  const char* algorithm; /* greedy, inertia, gric-, gric+, ltp, face or all */
  const char* obstacle;  /* none, stripe, ushape, concave1, concave2 */
  const double* densities;
  size_t density_count;
  size_t trials_per_point;
  uint64_t master_seed;
  unsigned workers;
  geo_params params;
} geo_sweep_config;

GEO_API void geo_sweep_config_init(geo_sweep_config* config);

GEO_API geo_status geo_sweep_run(const geo_sweep_config* config, geo_report** out);

typedef struct geo_report_row {
  const char* algorithm; /* static strings */
  const char* obstacle;
  double density;
  size_t trials;
  size_t successes;
  double success_rate;
  double median_hops;     /* NaN when nothing succeeded */
  double median_distance; /* NaN when nothing succeeded */
  size_t fail_ttl;
  size_t fail_oob;
  size_t fail_stuck;
  size_t fail_no_nodes;
} geo_report_row;

GEO_API size_t geo_report_row_count(const geo_report* report);
GEO_API geo_status geo_report_get_row(const geo_report* report, size_t index, geo_report_row* out);
/* CSV with header; numbers with four decimals. */
GEO_API geo_status geo_report_csv(const geo_report* report, char* buf, size_t cap, size_t* needed);
GEO_API void geo_report_free(geo_report* report);

/* ------------------------------------------------------------------------ */
/* Worlds */

typedef struct geo_world_stats {
  size_t nodes;
  size_t links; /* directed */
  double mean_degree;
  double interior_mean_degree;
  size_t interior_nodes;
  size_t gabriel_edges;
  int gabriel_planar;
  size_t components;
} geo_world_stats;

/* Seeds a world exactly like trial `trial_index` of a sweep with this seed. */
GEO_API geo_status geo_world_create(double density, const char* obstacle, uint64_t master_seed, size_t trial_index,
                                    geo_world** out);
GEO_API geo_status geo_world_get_stats(const geo_world* world, geo_world_stats* out);
/* worldv1 text dump. */
GEO_API geo_status geo_world_dump(const geo_world* world, char* buf, size_t cap, size_t* needed);
GEO_API void geo_world_free(geo_world* world);

/* ------------------------------------------------------------------------ */
/* Single traced trials */

typedef struct geo_trace_config {
  const char* algorithm; /* a single algorithm */
  const char* obstacle;
  double density;
  size_t trial_index;
  uint64_t master_seed;
  geo_params params;
} geo_trace_config;

GEO_API void geo_trace_config_init(geo_trace_config* config);
GEO_API geo_status geo_trace_run(const geo_trace_config* config, geo_trace** out);

typedef struct geo_trace_info {
  const char* status; /* success, fail_ttl, fail_oob, fail_stuck, fail_no_nodes */
  int success;
  size_t hops;
  double distance;
  size_t path_points;
} geo_trace_info;

GEO_API geo_status geo_trace_get_info(const geo_trace* trace, geo_trace_info* out);
GEO_API geo_status geo_trace_svg(const geo_trace* trace, char* buf, size_t cap, size_t* needed);
/* step,x,y rows, one per visited node. */
GEO_API geo_status geo_trace_csv(const geo_trace* trace, char* buf, size_t cap, size_t* needed);
GEO_API void geo_trace_free(geo_trace* trace);

#ifdef __cplusplus
}
#endif

#endif /* GEOROUTE_GEOROUTE_H */
