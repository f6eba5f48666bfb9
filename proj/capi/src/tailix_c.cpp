#include "tailix.h"

#include <cstring>
#include <exception>
#include <string>

#include "tailix/commands.hpp"
#include "tailix/estimators.hpp"
#include "tailix/sampling.hpp"
#include "tailix/stats.hpp"
#include "tailix/version.hpp"

namespace {

thread_local std::string g_last_error;

tailix_status status_from(tailix::ErrorCode code) {
  using tailix::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return TAILIX_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonPositiveValue: return TAILIX_ERR_NON_POSITIVE_VALUE;
    case ErrorCode::IndexOutOfRange: return TAILIX_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::KOutOfRange: return TAILIX_ERR_K_OUT_OF_RANGE;
    case ErrorCode::DegenerateDenominator: return TAILIX_ERR_DEGENERATE_DENOMINATOR;
    case ErrorCode::DegenerateMoments: return TAILIX_ERR_DEGENERATE_MOMENTS;
    case ErrorCode::DomainError: return TAILIX_ERR_DOMAIN;
    case ErrorCode::NonMonotoneTail: return TAILIX_ERR_NON_MONOTONE_TAIL;
    case ErrorCode::ParseError: return TAILIX_ERR_PARSE;
    case ErrorCode::EmptyAfterFilter: return TAILIX_ERR_EMPTY_AFTER_FILTER;
    case ErrorCode::TooManyDegenerate: return TAILIX_ERR_TOO_MANY_DEGENERATE;
    case ErrorCode::IoError: return TAILIX_ERR_IO;
  }
  return TAILIX_ERR_UNKNOWN;
}

// Runs the body, translating exceptions into status codes + last_error.
template <typename Fn>
tailix_status guarded(Fn&& fn) {
  try {
    fn();
    return TAILIX_OK;
  } catch (const tailix::Error& e) {
    g_last_error = e.what();
    return status_from(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TAILIX_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return TAILIX_ERR_UNKNOWN;
  }
}

tailix_status require(bool condition, const char* message) {
  if (condition) return TAILIX_OK;
  g_last_error = message;
  return TAILIX_ERR_INVALID_ARGUMENT;
}

tailix_suite_status suite_status_from(const tailix::SuiteVerdict& verdict) {
  switch (verdict.status) {
    case tailix::SuiteVerdict::Status::Pass: return TAILIX_SUITE_PASS;
    case tailix::SuiteVerdict::Status::Fail: return TAILIX_SUITE_FAIL;
    case tailix::SuiteVerdict::Status::Inconclusive: return TAILIX_SUITE_INCONCLUSIVE;
  }
  return TAILIX_SUITE_FAIL;
}

tailix::DatasetSpec dataset_spec(const char* path, const char* column_name, int64_t column_index,
                                 char delimiter, int header_mode, const double* threshold) {
  tailix::DatasetSpec spec;
  spec.path = path ? path : "";
  if (column_name) {
    spec.column = std::string(column_name);
  } else {
    spec.column = column_index;
  }
  spec.delimiter = delimiter ? delimiter : ',';
  spec.header = header_mode < 0   ? tailix::DatasetSpec::HeaderMode::Auto
                : header_mode == 0 ? tailix::DatasetSpec::HeaderMode::No
                                   : tailix::DatasetSpec::HeaderMode::Yes;
  if (threshold) spec.threshold = *threshold;
  return spec;
}

}  // namespace

struct tailix_sample {
  tailix::OrderedSample ordered;
};

struct tailix_series {
  tailix::EstimateSeries series;
};

extern "C" {

const char* tailix_version(void) { return tailix::kVersion; }

const char* tailix_last_error(void) { return g_last_error.c_str(); }

tailix_status tailix_sample_create(const double* values, size_t count, tailix_sample** out) {
  if (auto s = require(values && out, "values and out must not be NULL")) return s;
  return guarded([&] {
    tailix::RawSample raw(std::vector<double>(values, values + count));
    *out = new tailix_sample{tailix::OrderedSample::sort_from(raw)};
  });
}

tailix_status tailix_sample_from_csv(const char* path, const char* column_name,
                                     int64_t column_index, char delimiter, int header_mode,
                                     const double* threshold, tailix_sample** out,
                                     int64_t* rows_total) {
  if (auto s = require(path && out, "path and out must not be NULL")) return s;
  return guarded([&] {
    const tailix::IngestResult ingest = tailix::ingest_csv(
        dataset_spec(path, column_name, column_index, delimiter, header_mode, threshold));
    if (rows_total) *rows_total = ingest.rows_total;
    *out = new tailix_sample{tailix::OrderedSample::sort_from(ingest.sample)};
  });
}

void tailix_sample_destroy(tailix_sample* sample) { delete sample; }

size_t tailix_sample_size(const tailix_sample* sample) {
  return sample ? sample->ordered.size() : 0;
}

tailix_status tailix_order_statistic(const tailix_sample* sample, size_t i, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = sample->ordered.order_statistic(i); });
}

tailix_status tailix_empirical_tail(const tailix_sample* sample, double x, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = sample->ordered.empirical_tail(x); });
}

tailix_status tailix_cadena_basic(const tailix_sample* sample, int64_t k, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = tailix::cadena_basic(sample->ordered, k); });
}

tailix_status tailix_cadena_scaled(const tailix_sample* sample, int64_t k, double scale_c,
                                   double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded(
      [&] { *out = tailix::cadena_scaled(sample->ordered, k, tailix::ScaleAssumption{scale_c}); });
}

tailix_status tailix_variant_shift(const tailix_sample* sample, int64_t k, double c1, double c2,
                                   double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] {
    *out = tailix::variant_shift(sample->ordered, k, tailix::VariantShiftConfig{c1, c2});
  });
}

tailix_status tailix_variant_average(const tailix_sample* sample, int64_t k1, int64_t k2,
                                     double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] {
    *out = tailix::variant_average(sample->ordered, tailix::VariantAverageConfig{k1, k2});
  });
}

tailix_status tailix_hill(const tailix_sample* sample, int64_t k, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = tailix::hill(sample->ordered, k); });
}

tailix_status tailix_moment_stat(const tailix_sample* sample, int64_t k, int j, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = tailix::moment_stat(sample->ordered, k, j); });
}

tailix_status tailix_dedh_moment(const tailix_sample* sample, int64_t k, double* out) {
  if (auto s = require(sample && out, "sample and out must not be NULL")) return s;
  return guarded([&] { *out = tailix::dedh_moment(sample->ordered, k); });
}

void tailix_estimator_params_init(tailix_estimator_params* params) {
  if (!params) return;
  params->scale_c = 1.0;
  params->shift_c1 = 0.0;
  params->shift_c2 = 0.0;
  params->average_window = 30;
}

tailix_status tailix_series_compute(const tailix_sample* sample, const char* estimator_tag,
                                    const tailix_estimator_params* params, const int64_t* ks,
                                    size_t n_ks, tailix_series** out) {
  if (auto s = require(sample && estimator_tag && out, "sample, tag and out must not be NULL")) {
    return s;
  }
  return guarded([&] {
    const auto kind = tailix::EstimatorSpec::kind_from_tag(estimator_tag);
    if (!kind) {
      tailix::raise(tailix::ErrorCode::InvalidArgument,
                    std::string("unknown estimator '") + estimator_tag + "'");
    }
    tailix::EstimatorSpec spec;
    spec.kind = *kind;
    if (params) {
      spec.scale_c = params->scale_c;
      spec.shift_c1 = params->shift_c1;
      spec.shift_c2 = params->shift_c2;
      spec.average_window = params->average_window;
    }
    const std::size_t n = sample->ordered.size();
    const tailix::KGrid grid =
        (ks && n_ks) ? tailix::KGrid::validated(std::vector<std::int64_t>(ks, ks + n_ks), n)
                     : tailix::KGrid::plot_default(n, spec.scale_c);
    *out = new tailix_series{tailix::estimate_series(sample->ordered, spec, grid)};
  });
}

size_t tailix_series_size(const tailix_series* series) {
  return series ? series->series.points.size() : 0;
}

tailix_status tailix_series_point(const tailix_series* series, size_t index, int64_t* k,
                                  double* value, int* defined) {
  if (auto s = require(series != nullptr, "series must not be NULL")) return s;
  return guarded([&] {
    if (index >= series->series.points.size()) {
      tailix::raise(tailix::ErrorCode::IndexOutOfRange, "series point index out of range");
    }
    const auto& point = series->series.points[index];
    if (k) *k = point.k;
    if (defined) *defined = point.value ? 1 : 0;
    if (value) *value = point.value.value_or(0.0);
  });
}

tailix_status tailix_series_write_csv(const tailix_series* series, const char* path) {
  if (auto s = require(series && path, "series and path must not be NULL")) return s;
  return guarded([&] { tailix::write_series_csv(series->series, path); });
}

void tailix_series_destroy(tailix_series* series) { delete series; }

tailix_status tailix_sample_pareto(int64_t n, double alpha, double scale_c, uint64_t seed,
                                   uint64_t stream_id, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    tailix::RngStream stream(seed, stream_id);
    const tailix::RawSample sample =
        tailix::sample_pareto(n, tailix::ParetoModel{alpha, scale_c}, stream);
    std::memcpy(out, sample.values().data(), sample.size() * sizeof(double));
  });
}

tailix_status tailix_sample_hall(int64_t n, double alpha, double scale_c, double beta,
                                 double perturb_coeff, uint64_t seed, uint64_t stream_id,
                                 double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    const tailix::HallTailModel model(alpha, scale_c, beta, perturb_coeff);
    tailix::RngStream stream(seed, stream_id);
    const tailix::RawSample sample = tailix::sample_hall(n, model, stream);
    std::memcpy(out, sample.values().data(), sample.size() * sizeof(double));
  });
}

tailix_status tailix_sample_exponential(int64_t n, uint64_t seed, uint64_t stream_id,
                                        double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    tailix::RngStream stream(seed, stream_id);
    const tailix::RawSample sample = tailix::sample_exponential(n, stream);
    std::memcpy(out, sample.values().data(), sample.size() * sizeof(double));
  });
}

tailix_status tailix_renyi_order_stats(int64_t n, uint64_t seed, uint64_t stream_id, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    tailix::RngStream stream(seed, stream_id);
    const tailix::OrderedSample sample = tailix::renyi_exponential_order_stats(n, stream);
    std::memcpy(out, sample.values().data(), sample.size() * sizeof(double));
  });
}

tailix_status tailix_sample_floor_log(int64_t n, uint64_t seed, uint64_t stream_id, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] {
    tailix::RngStream stream(seed, stream_id);
    const tailix::RawSample sample = tailix::sample_floor_log(n, stream);
    std::memcpy(out, sample.values().data(), sample.size() * sizeof(double));
  });
}

tailix_status tailix_pareto_inverse_cdf(double u, double alpha, double scale_c, double* out) {
  if (auto s = require(out != nullptr, "out must not be NULL")) return s;
  return guarded([&] { *out = tailix::pareto_inverse_cdf(u, tailix::ParetoModel{alpha, scale_c}); });
}

double tailix_normal_cdf(double z) { return tailix::normal_cdf(z); }

tailix_status tailix_ks_distance(const double* samples, size_t count, double location,
                                 double scale, double* out) {
  if (auto s = require(samples && out, "samples and out must not be NULL")) return s;
  return guarded([&] {
    *out = tailix::ks_distance(std::span<const double>(samples, count), location, scale);
  });
}

void tailix_estimate_opts_init(tailix_estimate_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->column_index = 0;
  opts->delimiter = ',';
  opts->header_mode = -1;
  opts->scale_c = 1.0;
  opts->average_window = 30;
  opts->out_dir = ".";
  opts->seed = 1;
}

tailix_status tailix_run_estimate(const tailix_estimate_opts* opts, int64_t* rows_total,
                                  int64_t* n_used) {
  if (auto s = require(opts && opts->input_path, "opts and input_path must not be NULL")) return s;
  return guarded([&] {
    tailix::EstimateOptions options;
    options.dataset = dataset_spec(opts->input_path, opts->column_name, opts->column_index,
                                   opts->delimiter, opts->header_mode, opts->threshold);
    if (opts->estimator_tags && opts->n_estimators) {
      options.estimator_tags.assign(opts->estimator_tags,
                                    opts->estimator_tags + opts->n_estimators);
    }
    options.scale_c = opts->scale_c;
    options.shift_c1 = opts->shift_c1;
    options.shift_c2 = opts->shift_c2;
    options.average_window = opts->average_window;
    if (opts->ks && opts->n_ks) options.ks.assign(opts->ks, opts->ks + opts->n_ks);
    if (opts->out_dir) options.out_dir = opts->out_dir;
    options.seed = opts->seed;

    const tailix::EstimateResult result = tailix::run_estimate(options);
    if (rows_total) *rows_total = result.rows_total;
    if (n_used) *n_used = result.n_used;
  });
}

void tailix_simulate_opts_init(tailix_simulate_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->out_dir = ".";
  opts->seed = 1;
}

tailix_status tailix_run_simulate(const tailix_simulate_opts* opts, size_t* cells, size_t* files) {
  if (auto s = require(opts != nullptr, "opts must not be NULL")) return s;
  return guarded([&] {
    tailix::SimulateOptions options;
    if (opts->alphas && opts->n_alphas) {
      options.grid.alphas.assign(opts->alphas, opts->alphas + opts->n_alphas);
    }
    if (opts->cs && opts->n_cs) options.grid.Cs.assign(opts->cs, opts->cs + opts->n_cs);
    if (opts->ns && opts->n_ns) options.grid.ns.assign(opts->ns, opts->ns + opts->n_ns);
    options.grid.base_seed = opts->seed;
    if (opts->out_dir) options.out_dir = opts->out_dir;
    options.workers = opts->workers;

    const tailix::SimulateResult result = tailix::run_simulate(options);
    if (cells) *cells = result.cells;
    if (files) *files = result.files.size();
  });
}

void tailix_normality_opts_init(tailix_normality_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->alpha = 1.0;
  opts->scale_c = 1.0;
  opts->beta = 1.0;
  opts->n = 100000;
  opts->k = 1000;
  opts->replications = 1000;
  opts->seed = 1;
  opts->out_dir = ".";
}

tailix_status tailix_run_normality(const tailix_normality_opts* opts,
                                   tailix_suite_status* verdict) {
  if (auto s = require(opts != nullptr, "opts must not be NULL")) return s;
  return guarded([&] {
    tailix::NormalityOptions options;
    options.alpha = opts->alpha;
    options.C = opts->scale_c;
    options.beta = opts->beta;
    options.perturb_coeff = opts->perturb_coeff;
    options.n = opts->n;
    options.k = opts->k;
    options.replications = opts->replications;
    options.seed = opts->seed;
    if (opts->out_dir) options.out_dir = opts->out_dir;
    options.workers = opts->workers;

    const tailix::SuiteRunResult result = tailix::run_normality(options);
    if (verdict) *verdict = suite_status_from(result.verdict);
  });
}

void tailix_consistency_opts_init(tailix_consistency_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->model = "pareto";
  opts->alpha = 1.0;
  opts->scale_c = 1.0;
  opts->delta = 0.5;
  opts->replications = 50;
  opts->seed = 1;
  opts->out_dir = ".";
}

tailix_status tailix_run_consistency(const tailix_consistency_opts* opts,
                                     tailix_suite_status* verdict) {
  if (auto s = require(opts && opts->model, "opts and model must not be NULL")) return s;
  return guarded([&] {
    tailix::ConsistencyOptions options;
    options.model = opts->model;
    options.alpha = opts->alpha;
    options.C = opts->scale_c;
    options.delta = opts->delta;
    if (opts->ns && opts->n_ns) options.ns.assign(opts->ns, opts->ns + opts->n_ns);
    options.replications = opts->replications;
    options.seed = opts->seed;
    if (opts->out_dir) options.out_dir = opts->out_dir;
    options.workers = opts->workers;

    const tailix::SuiteRunResult result = tailix::run_consistency(options);
    if (verdict) *verdict = suite_status_from(result.verdict);
  });
}

void tailix_lemma2_opts_init(tailix_lemma2_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->n = 100000;
  opts->k = 316;
  opts->replications = 2000;
  opts->seed = 1;
  opts->out_dir = ".";
}

tailix_status tailix_run_lemma2(const tailix_lemma2_opts* opts, tailix_suite_status* verdict) {
  if (auto s = require(opts != nullptr, "opts must not be NULL")) return s;
  return guarded([&] {
    tailix::Lemma2Options options;
    options.n = opts->n;
    options.k = opts->k;
    options.replications = opts->replications;
    options.seed = opts->seed;
    if (opts->out_dir) options.out_dir = opts->out_dir;
    options.workers = opts->workers;

    const tailix::SuiteRunResult result = tailix::run_lemma2(options);
    if (verdict) *verdict = suite_status_from(result.verdict);
  });
}

void tailix_mindex_opts_init(tailix_mindex_opts* opts) {
  if (!opts) return;
  std::memset(opts, 0, sizeof(*opts));
  opts->builtin = "power";
  opts->eta = 1.0;
  opts->coefficient = 1.0;
  opts->grid_from = 10.0;
  opts->grid_to = 1e12;
  opts->grid_points = 48;
  opts->out_dir = ".";
}

tailix_status tailix_run_mindex(const tailix_mindex_opts* opts, double* estimated_index,
                                int* drifting) {
  if (auto s = require(opts != nullptr, "opts must not be NULL")) return s;
  return guarded([&] {
    tailix::MindexOptions options;
    if (opts->builtin) options.builtin = opts->builtin;
    options.eta = opts->eta;
    options.coefficient = opts->coefficient;
    if (opts->input_path) options.input_path = opts->input_path;
    options.values_are_log = opts->values_are_log != 0;
    options.grid_from = opts->grid_from;
    options.grid_to = opts->grid_to;
    options.grid_points = opts->grid_points;
    if (opts->out_dir) options.out_dir = opts->out_dir;

    const tailix::MindexRunResult result = tailix::run_mindex(options);
    if (estimated_index) *estimated_index = result.estimated_index;
    if (drifting) *drifting = result.drifting ? 1 : 0;
  });
}

}  // extern "C"
