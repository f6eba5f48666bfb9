// tailix command line: tail index estimation on CSV data, seeded
// simulation grids and Monte Carlo verification suites. Thin shell over
// the shared-library C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailix.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSuiteFailed = 2;
constexpr int kExitDegenerateData = 3;

int exit_code_for(tailix_status status) {
  switch (status) {
    case TAILIX_OK:
      return kExitOk;
    case TAILIX_ERR_NON_POSITIVE_VALUE:
    case TAILIX_ERR_EMPTY_AFTER_FILTER:
    case TAILIX_ERR_DEGENERATE_DENOMINATOR:
    case TAILIX_ERR_DEGENERATE_MOMENTS:
    case TAILIX_ERR_NON_MONOTONE_TAIL:
    case TAILIX_ERR_TOO_MANY_DEGENERATE:
      return kExitDegenerateData;
    default:
      return kExitUsage;
  }
}

int report_error(tailix_status status) {
  std::fprintf(stderr, "tailix: error: %s\n", tailix_last_error());
  return exit_code_for(status);
}

int report_verdict(const char* suite, tailix_suite_status verdict, const std::string& out_dir) {
  const char* name = verdict == TAILIX_SUITE_PASS          ? "pass"
                     : verdict == TAILIX_SUITE_FAIL        ? "fail"
                                                           : "inconclusive";
  std::printf("%s suite: %s (report in %s)\n", suite, name, out_dir.c_str());
  return verdict == TAILIX_SUITE_PASS ? kExitOk : kExitSuiteFailed;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TAILIX_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
    std::fprintf(stderr, "tailix: warning: ignoring non-numeric TAILIX_SEED\n");
  }
  return 1;
}

struct DatasetFlags {
  std::string input;
  std::string column = "0";
  std::string delimiter = ",";
  std::string header = "auto";
  double threshold = 0.0;
  bool has_threshold = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--input", input, "input CSV file")->required();
    cmd->add_option("--column", column, "column index (0-based) or header name")
        ->capture_default_str();
    cmd->add_option("--delimiter", delimiter, "field delimiter")->capture_default_str();
    cmd->add_option("--header", header, "header handling: auto|yes|no")->capture_default_str();
    cmd->add_option("--threshold", threshold, "keep values >= threshold")
        ->each([this](const std::string&) { has_threshold = true; });
  }

  // Splits the column selector into (name, index).
  bool column_is_index(std::int64_t* index) const {
    char* end = nullptr;
    const long long v = std::strtoll(column.c_str(), &end, 10);
    if (end && *end == '\0' && !column.empty()) {
      *index = v;
      return true;
    }
    return false;
  }

  int header_mode() const {
    if (header == "yes") return 1;
    if (header == "no") return 0;
    return -1;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail index estimation and Monte Carlo verification"};
  app.set_version_flag("--version", std::string(tailix_version()));
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  std::string out_dir = ".";
  int workers = 0;
  app.add_option("--seed", seed, "base seed (default: TAILIX_SEED env or 1)");
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--workers", workers, "worker threads (0 = all cores)");

  // ---- estimate ----------------------------------------------------
  auto* estimate = app.add_subcommand("estimate", "estimator series over k for a CSV dataset");
  DatasetFlags dataset;
  dataset.attach(estimate);
  std::vector<std::string> estimators{"cadena", "hill", "moment"};
  double scale_c = 1.0;
  double shift_c1 = 0.0, shift_c2 = 0.0;
  std::int64_t average_window = 30;
  std::vector<std::int64_t> ks;
  estimate->add_option("--estimator", estimators,
                       "estimators: cadena|cadena-scaled|shift|average|hill|hill-recip|moment|moment-recip")
      ->capture_default_str();
  estimate->add_option("--C", scale_c, "assumed tail scale constant")->capture_default_str();
  estimate->add_option("--c1", shift_c1, "shift variant numerator constant");
  estimate->add_option("--c2", shift_c2, "shift variant denominator constant");
  estimate->add_option("--avg-window", average_window, "averaging window width k2-k1")
      ->capture_default_str();
  estimate->add_option("--k", ks, "explicit k values (default: plot grid)");

  // ---- simulate ----------------------------------------------------
  auto* simulate = app.add_subcommand("simulate", "seeded simulation grid of estimator series");
  std::vector<double> alphas{0.1, 1.0, 1.5};
  std::vector<double> cs{0.1, 1.0, 10.0};
  std::vector<std::int64_t> ns{1000, 10000, 100000};
  simulate->add_option("--alpha", alphas, "tail indices")->capture_default_str();
  simulate->add_option("--C", cs, "scale constants")->capture_default_str();
  simulate->add_option("--n", ns, "sample sizes")->capture_default_str();

  // ---- normality ----------------------------------------------------
  auto* normality = app.add_subcommand("normality", "sampling distribution of the standardized statistic");
  double norm_alpha = 1.0, norm_c = 1.0, norm_beta = 1.0, perturb = 0.0;
  std::int64_t norm_n = 100000, norm_k = 1000, norm_r = 1000;
  normality->add_option("--alpha", norm_alpha, "true tail index")->capture_default_str();
  normality->add_option("--C", norm_c, "true scale constant")->capture_default_str();
  normality->add_option("--beta", norm_beta, "second-order tail exponent")->capture_default_str();
  normality->add_option("--perturb-coeff", perturb, "perturbation coefficient (0 = exact Pareto)")
      ->capture_default_str();
  normality->add_option("--n", norm_n, "sample size")->capture_default_str();
  normality->add_option("--k", norm_k, "number of upper order statistics")->capture_default_str();
  normality->add_option("--replications", norm_r, "Monte Carlo replications")->capture_default_str();

  // ---- consistency ----------------------------------------------------
  auto* consistency = app.add_subcommand("consistency", "median error sweep over growing n");
  std::string model = "pareto";
  double cons_alpha = 1.0, cons_c = 1.0, delta = 0.5;
  std::vector<std::int64_t> cons_ns{1000, 10000, 100000};
  std::int64_t cons_r = 50;
  consistency->add_option("--model", model, "pareto|floor-log")->capture_default_str();
  consistency->add_option("--alpha", cons_alpha, "true tail index (pareto)")->capture_default_str();
  consistency->add_option("--C", cons_c, "true scale constant (pareto)")->capture_default_str();
  consistency->add_option("--delta", delta, "k = floor(n^delta)")->capture_default_str();
  consistency->add_option("--n", cons_ns, "sample sizes")->capture_default_str();
  consistency->add_option("--replications", cons_r, "replications per n")->capture_default_str();

  // ---- lemma2 ----------------------------------------------------
  auto* lemma2 = app.add_subcommand("lemma2", "normality of the centered exponential order statistic");
  std::int64_t l2_n = 100000, l2_k = 316, l2_r = 2000;
  lemma2->add_option("--n", l2_n, "sample size")->capture_default_str();
  lemma2->add_option("--k", l2_k, "number of upper order statistics")->capture_default_str();
  lemma2->add_option("--replications", l2_r, "Monte Carlo replications")->capture_default_str();

  // ---- mindex ----------------------------------------------------
  auto* mindex = app.add_subcommand("mindex", "log-log growth diagnostics for a tail function");
  std::string builtin = "power";
  double eta = 1.0, coefficient = 1.0;
  std::string mindex_input;
  bool values_are_log = false;
  double grid_from = 10.0, grid_to = 1e12;
  std::size_t grid_points = 48;
  mindex->add_option("--builtin", builtin, "builtin function: power|power-log|floor-log|exp")
      ->capture_default_str();
  mindex->add_option("--eta", eta, "power exponent")->capture_default_str();
  mindex->add_option("--coef", coefficient, "power coefficient")->capture_default_str();
  mindex->add_option("--input", mindex_input, "tabulated (x,U) CSV file instead of a builtin");
  mindex->add_flag("--values-are-log", values_are_log, "tabulated second column is log U(x)");
  mindex->add_option("--grid-from", grid_from, "grid start (> 1)")->capture_default_str();
  mindex->add_option("--grid-to", grid_to, "grid end")->capture_default_str();
  mindex->add_option("--grid-points", grid_points, "grid size")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  if (estimate->parsed()) {
    tailix_estimate_opts opts;
    tailix_estimate_opts_init(&opts);
    opts.input_path = dataset.input.c_str();
    std::int64_t column_index = 0;
    if (dataset.column_is_index(&column_index)) {
      opts.column_index = column_index;
    } else {
      opts.column_name = dataset.column.c_str();
    }
    if (dataset.delimiter.size() != 1) {
      std::fprintf(stderr, "tailix: error: delimiter must be one character\n");
      return kExitUsage;
    }
    opts.delimiter = dataset.delimiter[0];
    opts.header_mode = dataset.header_mode();
    if (dataset.has_threshold) opts.threshold = &dataset.threshold;

    std::vector<const char*> tags;
    for (const auto& tag : estimators) tags.push_back(tag.c_str());
    opts.estimator_tags = tags.data();
    opts.n_estimators = tags.size();
    opts.scale_c = scale_c;
    opts.shift_c1 = shift_c1;
    opts.shift_c2 = shift_c2;
    opts.average_window = average_window;
    if (!ks.empty()) {
      opts.ks = ks.data();
      opts.n_ks = ks.size();
    }
    opts.out_dir = out_dir.c_str();
    opts.seed = seed;

    std::int64_t rows_total = 0, n_used = 0;
    const tailix_status status = tailix_run_estimate(&opts, &rows_total, &n_used);
    if (status != TAILIX_OK) return report_error(status);
    std::printf("estimate: %lld rows read, n = %lld used; %zu series in %s\n",
                static_cast<long long>(rows_total), static_cast<long long>(n_used), tags.size(),
                out_dir.c_str());
    return kExitOk;
  }

  if (simulate->parsed()) {
    tailix_simulate_opts opts;
    tailix_simulate_opts_init(&opts);
    opts.alphas = alphas.data();
    opts.n_alphas = alphas.size();
    opts.cs = cs.data();
    opts.n_cs = cs.size();
    opts.ns = ns.data();
    opts.n_ns = ns.size();
    opts.out_dir = out_dir.c_str();
    opts.seed = seed;
    opts.workers = workers;

    size_t cells = 0, files = 0;
    const tailix_status status = tailix_run_simulate(&opts, &cells, &files);
    if (status != TAILIX_OK) return report_error(status);
    std::printf("simulate: %zu cells, %zu series files in %s\n", cells, files, out_dir.c_str());
    return kExitOk;
  }

  if (normality->parsed()) {
    tailix_normality_opts opts;
    tailix_normality_opts_init(&opts);
    opts.alpha = norm_alpha;
    opts.scale_c = norm_c;
    opts.beta = norm_beta;
    opts.perturb_coeff = perturb;
    opts.n = norm_n;
    opts.k = norm_k;
    opts.replications = norm_r;
    opts.seed = seed;
    opts.out_dir = out_dir.c_str();
    opts.workers = workers;

    tailix_suite_status verdict = TAILIX_SUITE_FAIL;
    const tailix_status status = tailix_run_normality(&opts, &verdict);
    if (status != TAILIX_OK) return report_error(status);
    return report_verdict("normality", verdict, out_dir);
  }

  if (consistency->parsed()) {
    tailix_consistency_opts opts;
    tailix_consistency_opts_init(&opts);
    opts.model = model.c_str();
    opts.alpha = cons_alpha;
    opts.scale_c = cons_c;
    opts.delta = delta;
    opts.ns = cons_ns.data();
    opts.n_ns = cons_ns.size();
    opts.replications = cons_r;
    opts.seed = seed;
    opts.out_dir = out_dir.c_str();
    opts.workers = workers;

    tailix_suite_status verdict = TAILIX_SUITE_FAIL;
    const tailix_status status = tailix_run_consistency(&opts, &verdict);
    if (status != TAILIX_OK) return report_error(status);
    return report_verdict("consistency", verdict, out_dir);
  }

  if (lemma2->parsed()) {
    tailix_lemma2_opts opts;
    tailix_lemma2_opts_init(&opts);
    opts.n = l2_n;
    opts.k = l2_k;
    opts.replications = l2_r;
    opts.seed = seed;
    opts.out_dir = out_dir.c_str();
    opts.workers = workers;

    tailix_suite_status verdict = TAILIX_SUITE_FAIL;
    const tailix_status status = tailix_run_lemma2(&opts, &verdict);
    if (status != TAILIX_OK) return report_error(status);
    return report_verdict("lemma2", verdict, out_dir);
  }

  if (mindex->parsed()) {
    tailix_mindex_opts opts;
    tailix_mindex_opts_init(&opts);
    opts.builtin = builtin.c_str();
    opts.eta = eta;
    opts.coefficient = coefficient;
    if (!mindex_input.empty()) opts.input_path = mindex_input.c_str();
    opts.values_are_log = values_are_log ? 1 : 0;
    opts.grid_from = grid_from;
    opts.grid_to = grid_to;
    opts.grid_points = grid_points;
    opts.out_dir = out_dir.c_str();

    double estimated_index = 0.0;
    int drifting = 0;
    const tailix_status status = tailix_run_mindex(&opts, &estimated_index, &drifting);
    if (status != TAILIX_OK) return report_error(status);
    std::printf("mindex: estimated index %.6g%s (details in %s)\n", estimated_index,
                drifting ? ", still drifting at grid depth" : "", out_dir.c_str());
    return kExitOk;
  }

  return kExitUsage;
}
