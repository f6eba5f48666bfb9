#ifndef TAILIX_COMMANDS_HPP
#define TAILIX_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tailix/csv_io.hpp"
#include "tailix/experiments.hpp"

namespace tailix {

// High-level command runners shared by the CLI (through the C API) and
// the test suites. Each writes its data files plus a manifest.json into
// out_dir and returns what the caller needs to report.

struct EstimateOptions {
  DatasetSpec dataset;
  std::vector<std::string> estimator_tags{"cadena", "hill", "moment"};
  double scale_c = 1.0;
  double shift_c1 = 0.0;
  double shift_c2 = 0.0;
  std::int64_t average_window = 30;
  std::vector<std::int64_t> ks;  // empty: plot-default grid for n
  std::string out_dir = ".";
  std::uint64_t seed = 1;  // recorded in the manifest only
};

struct EstimateResult {
  std::int64_t rows_total = 0;
  std::int64_t n_used = 0;
  std::vector<std::string> files;
};

EstimateResult run_estimate(const EstimateOptions& opts);

struct SimulateOptions {
  GridSpec grid;
  std::string out_dir = ".";
  int workers = 0;
};

struct SimulateResult {
  std::size_t cells = 0;
  std::vector<std::string> files;
};

SimulateResult run_simulate(const SimulateOptions& opts);

struct NormalityOptions {
  double alpha = 1.0;
  double C = 1.0;
  double beta = 1.0;
  double perturb_coeff = 0.0;
  std::int64_t n = 100000;
  std::int64_t k = 1000;
  std::int64_t replications = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int workers = 0;
};

struct ConsistencyOptions {
  std::string model = "pareto";  // "pareto" | "floor-log"
  double alpha = 1.0;
  double C = 1.0;
  double delta = 0.5;
  std::vector<std::int64_t> ns{1000, 10000, 100000};
  std::int64_t replications = 50;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int workers = 0;
};

struct Lemma2Options {
  std::int64_t n = 100000;
  std::int64_t k = 316;
  std::int64_t replications = 2000;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int workers = 0;
};

struct SuiteRunResult {
  SuiteVerdict verdict;
  std::string report_path;
};

SuiteRunResult run_normality(const NormalityOptions& opts);
SuiteRunResult run_consistency(const ConsistencyOptions& opts);
SuiteRunResult run_lemma2(const Lemma2Options& opts);

struct MindexOptions {
  // Either a builtin function or a tabulated two-column (x, U(x)) file.
  std::string builtin;  // "power" | "power-log" | "floor-log" | "exp"
  double eta = 1.0;     // power exponent for the "power" builtin
  double coefficient = 1.0;
  std::string input_path;    // tabulated file; overrides builtin when set
  bool values_are_log = false;  // tabulated second column is log U(x)
  double grid_from = 10.0;
  double grid_to = 1e12;
  std::size_t grid_points = 48;
  std::string out_dir = ".";
};

struct MindexRunResult {
  double estimated_index = 0.0;
  double max_deviation_tail = 0.0;
  bool drifting = false;
  std::string csv_path;
};

MindexRunResult run_mindex(const MindexOptions& opts);

}  // namespace tailix

#endif  // TAILIX_COMMANDS_HPP
