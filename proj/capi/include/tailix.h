/*
 * tailix C API: tail index estimation, seeded heavy-tail samplers and
 * Monte Carlo verification suites behind opaque handles and status codes.
 *
 * Conventions:
 *   - every fallible call returns tailix_status; TAILIX_OK is 0;
 *   - on failure, tailix_last_error() returns a thread-local message that
 *     stays valid until the next failing call on the same thread;
 *   - handles are created by the library and released with the matching
 *     *_destroy function; destroying NULL is a no-op;
 *   - order statistics are 1-indexed (i-th smallest of n);
 *   - all samplers are pure functions of (parameters, seed, stream_id).
 */

#ifndef TAILIX_H
#define TAILIX_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TAILIX_API __declspec(dllexport)
#else
#define TAILIX_API __attribute__((visibility("default")))
#endif

typedef enum tailix_status {
  TAILIX_OK = 0,
  TAILIX_ERR_INVALID_ARGUMENT = 1,
  TAILIX_ERR_NON_POSITIVE_VALUE = 2,
  TAILIX_ERR_INDEX_OUT_OF_RANGE = 3,
  TAILIX_ERR_K_OUT_OF_RANGE = 4,
  TAILIX_ERR_DEGENERATE_DENOMINATOR = 5,
  TAILIX_ERR_DEGENERATE_MOMENTS = 6,
  TAILIX_ERR_DOMAIN = 7,
  TAILIX_ERR_NON_MONOTONE_TAIL = 8,
  TAILIX_ERR_PARSE = 9,
  TAILIX_ERR_EMPTY_AFTER_FILTER = 10,
  TAILIX_ERR_TOO_MANY_DEGENERATE = 11,
  TAILIX_ERR_IO = 12,
  TAILIX_ERR_UNKNOWN = 99
} tailix_status;

typedef enum tailix_suite_status {
  TAILIX_SUITE_PASS = 0,
  TAILIX_SUITE_FAIL = 1,
  TAILIX_SUITE_INCONCLUSIVE = 2
} tailix_suite_status;

TAILIX_API const char* tailix_version(void);
TAILIX_API const char* tailix_last_error(void);

/* ------------------------------------------------------------------ */
/* Samples                                                             */

typedef struct tailix_sample tailix_sample;

/* Sorts `count` positive values into an ordered sample (count >= 2). */
TAILIX_API tailix_status tailix_sample_create(const double* values, size_t count,
                                              tailix_sample** out);

/*
 * Loads one column of a CSV file. `column_name` selects by header name
 * when non-NULL, otherwise `column_index` (0-based) applies.
 * header_mode: -1 autodetect, 0 no header, 1 header present.
 * threshold: keep values >= *threshold when non-NULL.
 * rows_total (optional) receives the data row count before filtering.
 */
TAILIX_API tailix_status tailix_sample_from_csv(const char* path, const char* column_name,
                                                int64_t column_index, char delimiter,
                                                int header_mode, const double* threshold,
                                                tailix_sample** out, int64_t* rows_total);

TAILIX_API void tailix_sample_destroy(tailix_sample* sample);

TAILIX_API size_t tailix_sample_size(const tailix_sample* sample);

/* The i-th smallest observation, 1 <= i <= n. */
TAILIX_API tailix_status tailix_order_statistic(const tailix_sample* sample, size_t i,
                                                double* out);

/* (1/n) * #{ observations > x }. */
TAILIX_API tailix_status tailix_empirical_tail(const tailix_sample* sample, double x, double* out);

/* ------------------------------------------------------------------ */
/* Estimators (k counts upper order statistics, 1 <= k <= n-1)         */

/* log(n/k) / log(X) with X the k-th largest observation. */
TAILIX_API tailix_status tailix_cadena_basic(const tailix_sample* sample, int64_t k, double* out);

/* (log(n/k) + log C) / log(X); equals the basic form at C = 1. */
TAILIX_API tailix_status tailix_cadena_scaled(const tailix_sample* sample, int64_t k,
                                              double scale_c, double* out);

/* (C1 + log(n/k)) / (C2 + log X). */
TAILIX_API tailix_status tailix_variant_shift(const tailix_sample* sample, int64_t k, double c1,
                                              double c2, double* out);

/* Mean of the basic estimator over k = k1..k2 inclusive. */
TAILIX_API tailix_status tailix_variant_average(const tailix_sample* sample, int64_t k1,
                                                int64_t k2, double* out);

/* Hill estimator (mean log-excess of the top k observations). */
TAILIX_API tailix_status tailix_hill(const tailix_sample* sample, int64_t k, double* out);

/* j-th moment of the log-excesses, j in {1, 2}; j = 1 equals Hill. */
TAILIX_API tailix_status tailix_moment_stat(const tailix_sample* sample, int64_t k, int j,
                                            double* out);

/* Moment estimator M1 + 1 - (1/2) / (1 - M1^2/M2). */
TAILIX_API tailix_status tailix_dedh_moment(const tailix_sample* sample, int64_t k, double* out);

/* ------------------------------------------------------------------ */
/* Series over a k grid                                                */

typedef struct tailix_series tailix_series;

typedef struct tailix_estimator_params {
  double scale_c;          /* cadena-scaled */
  double shift_c1;         /* shift */
  double shift_c2;         /* shift */
  int64_t average_window;  /* average: window width k2 - k1 */
} tailix_estimator_params;

TAILIX_API void tailix_estimator_params_init(tailix_estimator_params* params);

/*
 * estimator_tag is one of: cadena, cadena-scaled, shift, average, hill,
 * hill-recip, moment, moment-recip. Passing n_ks = 0 selects the default
 * plot grid (all k to 100, geometric ratio 1.05 above, plus round(n*C)).
 * Degenerate grid points are kept in the series as undefined.
 */
TAILIX_API tailix_status tailix_series_compute(const tailix_sample* sample,
                                               const char* estimator_tag,
                                               const tailix_estimator_params* params,
                                               const int64_t* ks, size_t n_ks,
                                               tailix_series** out);

TAILIX_API size_t tailix_series_size(const tailix_series* series);

/* defined receives 1 when the point has a value (then *value is set). */
TAILIX_API tailix_status tailix_series_point(const tailix_series* series, size_t index, int64_t* k,
                                             double* value, int* defined);

/* CSV with header k,estimator_tag,value,defined; undefined points have an
 * empty value field. */
TAILIX_API tailix_status tailix_series_write_csv(const tailix_series* series, const char* path);

TAILIX_API void tailix_series_destroy(tailix_series* series);

/* ------------------------------------------------------------------ */
/* Seeded samplers (out buffers hold n doubles)                        */

TAILIX_API tailix_status tailix_sample_pareto(int64_t n, double alpha, double scale_c,
                                              uint64_t seed, uint64_t stream_id, double* out);

/* Hall-class tail C x^-alpha (1 + c x^(-1.1 beta)); c = 0 is exact Pareto. */
TAILIX_API tailix_status tailix_sample_hall(int64_t n, double alpha, double scale_c, double beta,
                                            double perturb_coeff, uint64_t seed,
                                            uint64_t stream_id, double* out);

TAILIX_API tailix_status tailix_sample_exponential(int64_t n, uint64_t seed, uint64_t stream_id,
                                                   double* out);

/* Full vector of exponential order statistics via the Renyi partial sums. */
TAILIX_API tailix_status tailix_renyi_order_stats(int64_t n, uint64_t seed, uint64_t stream_id,
                                                  double* out);

/* Draws from the non-RV tail e^(-floor(log x)); values lie in {e, e^2, ...}. */
TAILIX_API tailix_status tailix_sample_floor_log(int64_t n, uint64_t seed, uint64_t stream_id,
                                                 double* out);

/* (C/(1-u))^(1/alpha) for u in [0, 1). */
TAILIX_API tailix_status tailix_pareto_inverse_cdf(double u, double alpha, double scale_c,
                                                   double* out);

/* ------------------------------------------------------------------ */
/* Statistics toolbox                                                  */

TAILIX_API double tailix_normal_cdf(double z);

TAILIX_API tailix_status tailix_ks_distance(const double* samples, size_t count, double location,
                                            double scale, double* out);

/* ------------------------------------------------------------------ */
/* Command runners (write data files plus manifest.json into out_dir)  */

typedef struct tailix_estimate_opts {
  const char* input_path;
  const char* column_name;  /* NULL: use column_index */
  int64_t column_index;
  char delimiter;
  int header_mode;          /* -1 auto, 0 no, 1 yes */
  const double* threshold;  /* NULL: no filtering */
  const char* const* estimator_tags;
  size_t n_estimators;
  double scale_c;
  double shift_c1;
  double shift_c2;
  int64_t average_window;
  const int64_t* ks;  /* NULL/0: default plot grid */
  size_t n_ks;
  const char* out_dir;
  uint64_t seed;
} tailix_estimate_opts;

TAILIX_API void tailix_estimate_opts_init(tailix_estimate_opts* opts);

TAILIX_API tailix_status tailix_run_estimate(const tailix_estimate_opts* opts,
                                             int64_t* rows_total, int64_t* n_used);

typedef struct tailix_simulate_opts {
  const double* alphas;
  size_t n_alphas;
  const double* cs;
  size_t n_cs;
  const int64_t* ns;
  size_t n_ns;
  const char* out_dir;
  uint64_t seed;
  int workers; /* 0: hardware concurrency */
} tailix_simulate_opts;

TAILIX_API void tailix_simulate_opts_init(tailix_simulate_opts* opts);

TAILIX_API tailix_status tailix_run_simulate(const tailix_simulate_opts* opts, size_t* cells,
                                             size_t* files);

typedef struct tailix_normality_opts {
  double alpha;
  double scale_c;
  double beta;
  double perturb_coeff;
  int64_t n;
  int64_t k;
  int64_t replications;
  uint64_t seed;
  const char* out_dir;
  int workers;
} tailix_normality_opts;

TAILIX_API void tailix_normality_opts_init(tailix_normality_opts* opts);

TAILIX_API tailix_status tailix_run_normality(const tailix_normality_opts* opts,
                                              tailix_suite_status* verdict);

typedef struct tailix_consistency_opts {
  const char* model; /* "pareto" | "floor-log" */
  double alpha;
  double scale_c;
  double delta;
  const int64_t* ns;
  size_t n_ns;
  int64_t replications;
  uint64_t seed;
  const char* out_dir;
  int workers;
} tailix_consistency_opts;

TAILIX_API void tailix_consistency_opts_init(tailix_consistency_opts* opts);

TAILIX_API tailix_status tailix_run_consistency(const tailix_consistency_opts* opts,
                                                tailix_suite_status* verdict);

typedef struct tailix_lemma2_opts {
  int64_t n;
  int64_t k;
  int64_t replications;
  uint64_t seed;
  const char* out_dir;
  int workers;
} tailix_lemma2_opts;

TAILIX_API void tailix_lemma2_opts_init(tailix_lemma2_opts* opts);

TAILIX_API tailix_status tailix_run_lemma2(const tailix_lemma2_opts* opts,
                                           tailix_suite_status* verdict);

typedef struct tailix_mindex_opts {
  const char* builtin; /* "power" | "power-log" | "floor-log" | "exp" */
  double eta;
  double coefficient;
  const char* input_path; /* tabulated (x, U(x)) file; overrides builtin */
  int values_are_log;
  double grid_from;
  double grid_to;
  size_t grid_points;
  const char* out_dir;
} tailix_mindex_opts;

TAILIX_API void tailix_mindex_opts_init(tailix_mindex_opts* opts);

TAILIX_API tailix_status tailix_run_mindex(const tailix_mindex_opts* opts,
                                           double* estimated_index, int* drifting);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TAILIX_H */
