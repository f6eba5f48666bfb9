#include "tailix/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "tailix/mindex.hpp"
#include "tailix/stats.hpp"

namespace tailix {

namespace {

namespace fs = std::filesystem;

std::string prepare_out_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) raise(ErrorCode::IoError, "cannot create output directory '" + out_dir + "'");
  return out_dir;
}

std::string join(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

nlohmann::json params_json(const ExperimentParams& p) {
  nlohmann::json j;
  if (p.alpha) j["alpha"] = *p.alpha;
  if (p.C) j["C"] = *p.C;
  if (p.beta) j["beta"] = *p.beta;
  j["n"] = p.n;
  j["k"] = p.k;
  j["replications"] = p.replications;
  j["base_seed"] = p.base_seed;
  return j;
}

nlohmann::json verdict_json(const SuiteVerdict& verdict) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : verdict.checks) {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"bound_lo", c.bound_lo},
                      {"bound_hi", c.bound_hi},
                      {"derivation", c.derivation},
                      {"pass", c.pass}});
  }
  nlohmann::json j{{"status", SuiteVerdict::status_name(verdict.status)}, {"checks", checks}};
  if (!verdict.note.empty()) j["note"] = verdict.note;
  return j;
}

void write_json(const nlohmann::json& doc, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) raise(ErrorCode::IoError, "write failure on '" + path + "'");
}

EstimatorSpec spec_for_tag(const std::string& tag, const EstimateOptions& opts) {
  const auto kind = EstimatorSpec::kind_from_tag(tag);
  if (!kind) raise(ErrorCode::InvalidArgument, "unknown estimator '" + tag + "'");
  EstimatorSpec spec;
  spec.kind = *kind;
  // "cadena" on data with an assumed scale is the scale-corrected form;
  // C defaults to 1 which reproduces the basic estimator exactly.
  if (spec.kind == EstimatorKind::CadenaBasic && opts.scale_c != 1.0) {
    spec.kind = EstimatorKind::CadenaScaled;
  }
  spec.scale_c = opts.scale_c;
  spec.shift_c1 = opts.shift_c1;
  spec.shift_c2 = opts.shift_c2;
  spec.average_window = opts.average_window;
  return spec;
}

}  // namespace

EstimateResult run_estimate(const EstimateOptions& opts) {
  const IngestResult ingest = ingest_csv(opts.dataset);
  const OrderedSample os = OrderedSample::sort_from(ingest.sample);
  const std::size_t n = os.size();

  const KGrid grid = opts.ks.empty() ? KGrid::plot_default(n, opts.scale_c)
                                     : KGrid::validated(opts.ks, n);

  const std::string dir = prepare_out_dir(opts.out_dir);
  EstimateResult result;
  result.rows_total = ingest.rows_total;
  result.n_used = static_cast<std::int64_t>(n);

  RunManifest manifest = make_manifest(
      "estimate",
      {{"input", opts.dataset.path},
       {"C", format_double(opts.scale_c)},
       {"n", std::to_string(n)},
       {"threshold", opts.dataset.threshold ? format_double(*opts.dataset.threshold) : "none"}},
      opts.seed);

  for (const auto& tag : opts.estimator_tags) {
    const EstimatorSpec spec = spec_for_tag(tag, opts);
    const EstimateSeries series = estimate_series(os, spec, grid);
    const std::string name = "estimate_" + tag + ".csv";
    write_series_csv(series, join(dir, name));
    result.files.push_back(name);
    manifest.outputs.push_back(name);
  }

  write_manifest(manifest, join(dir, "manifest.json"));
  return result;
}

SimulateResult run_simulate(const SimulateOptions& opts) {
  const std::vector<CellSeries> cells = simulation_grid(opts.grid, opts.workers);
  const std::string dir = prepare_out_dir(opts.out_dir);

  SimulateResult result;
  result.cells = cells.size();

  RunManifest manifest = make_manifest(
      "simulate",
      {{"alphas", std::to_string(opts.grid.alphas.size())},
       {"Cs", std::to_string(opts.grid.Cs.size())},
       {"ns", std::to_string(opts.grid.ns.size())},
       {"k_rule", opts.grid.k_rule.describe()},
       {"cells", std::to_string(cells.size())}},
      opts.grid.base_seed);

  for (const auto& cell : cells) {
    for (const auto& series : cell.series) {
      const std::string name = "cell_a" + format_double(cell.alpha) + "_C" +
                               format_double(cell.C) + "_n" + std::to_string(cell.n) + "_" +
                               series.estimator_tag + ".csv";
      write_series_csv(series, join(dir, name));
      result.files.push_back(name);
      manifest.outputs.push_back(name);
    }
  }

  write_manifest(manifest, join(dir, "manifest.json"));
  return result;
}

SuiteRunResult run_normality(const NormalityOptions& opts) {
  const HallTailModel model(opts.alpha, opts.C, opts.beta, opts.perturb_coeff);
  const NormalityResult result =
      normality_experiment(model, opts.n, opts.k, opts.replications, opts.seed, opts.workers);
  const SuiteVerdict verdict = evaluate_normality(result, opts.alpha);

  nlohmann::json doc{
      {"suite", "normality"},
      {"params", params_json(result.params)},
      {"perturb_coeff", opts.perturb_coeff},
      {"mean", result.mean},
      {"variance", result.variance},
      {"ks_distance_vs_normal", result.ks_distance_vs_normal},
      {"degenerate_count", result.degenerate_count},
      {"verdict", verdict_json(verdict)},
  };

  const std::string dir = prepare_out_dir(opts.out_dir);
  const std::string report = join(dir, "normality_report.json");
  write_json(doc, report);

  RunManifest manifest = make_manifest("normality",
                                       {{"alpha", format_double(opts.alpha)},
                                        {"C", format_double(opts.C)},
                                        {"beta", format_double(opts.beta)},
                                        {"perturb_coeff", format_double(opts.perturb_coeff)},
                                        {"n", std::to_string(opts.n)},
                                        {"k", std::to_string(opts.k)},
                                        {"replications", std::to_string(opts.replications)}},
                                       opts.seed);
  manifest.outputs.push_back("normality_report.json");
  write_manifest(manifest, join(dir, "manifest.json"));
  return SuiteRunResult{verdict, report};
}

SuiteRunResult run_consistency(const ConsistencyOptions& opts) {
  ConsistencyModel model;
  if (opts.model == "pareto") {
    model = ParetoModel{opts.alpha, opts.C};
  } else if (opts.model == "floor-log") {
    model = FloorLogModel{};
  } else {
    raise(ErrorCode::InvalidArgument, "model must be 'pareto' or 'floor-log'");
  }

  GridSpec spec;
  spec.alphas = {opts.alpha};
  spec.Cs = {opts.C};
  spec.ns = opts.ns;
  spec.k_rule = KRule::power_delta(opts.delta);
  spec.replications = opts.replications;
  spec.base_seed = opts.seed;

  const ConsistencyCurve curve = consistency_experiment(model, spec, opts.workers);
  const SuiteVerdict verdict = evaluate_consistency(curve);

  nlohmann::json doc{
      {"suite", "consistency"},
      {"model", curve.model_label},
      {"alpha", curve.alpha_true},
      {"k_rule", curve.k_rule},
      {"replications", curve.replications},
      {"base_seed", curve.base_seed},
      {"ns", curve.ns},
      {"ks", curve.ks},
      {"median_errors", curve.median_errors},
      {"degenerate_counts", curve.degenerate_counts},
      {"verdict", verdict_json(verdict)},
  };

  const std::string dir = prepare_out_dir(opts.out_dir);
  const std::string report = join(dir, "consistency_report.json");
  write_json(doc, report);

  RunManifest manifest = make_manifest("consistency",
                                       {{"model", opts.model},
                                        {"alpha", format_double(opts.alpha)},
                                        {"C", format_double(opts.C)},
                                        {"delta", format_double(opts.delta)},
                                        {"replications", std::to_string(opts.replications)}},
                                       opts.seed);
  manifest.outputs.push_back("consistency_report.json");
  write_manifest(manifest, join(dir, "manifest.json"));
  return SuiteRunResult{verdict, report};
}

SuiteRunResult run_lemma2(const Lemma2Options& opts) {
  const NormalityResult result =
      lemma2_experiment(opts.n, opts.k, opts.replications, opts.seed, opts.workers);
  const SuiteVerdict verdict = evaluate_lemma2(result);

  nlohmann::json doc{
      {"suite", "lemma2"},
      {"params", params_json(result.params)},
      {"mean", result.mean},
      {"variance", result.variance},
      {"ks_distance_vs_normal", result.ks_distance_vs_normal},
      {"verdict", verdict_json(verdict)},
  };

  const std::string dir = prepare_out_dir(opts.out_dir);
  const std::string report = join(dir, "lemma2_report.json");
  write_json(doc, report);

  RunManifest manifest = make_manifest("lemma2",
                                       {{"n", std::to_string(opts.n)},
                                        {"k", std::to_string(opts.k)},
                                        {"replications", std::to_string(opts.replications)}},
                                       opts.seed);
  manifest.outputs.push_back("lemma2_report.json");
  write_manifest(manifest, join(dir, "manifest.json"));
  return SuiteRunResult{verdict, report};
}

namespace {

MFunction builtin_mfunction(const MindexOptions& opts) {
  if (opts.builtin == "power") {
    const double a = opts.coefficient;
    const double eta = opts.eta;
    if (!(a > 0.0)) raise(ErrorCode::InvalidArgument, "power coefficient must be positive");
    return MFunction::from_log([a, eta](double x) { return std::log(a) + eta * std::log(x); },
                               "power");
  }
  if (opts.builtin == "power-log") {
    const double eta = opts.eta;
    return MFunction::from_log(
        [eta](double x) { return eta * std::log(x) + std::log(std::log(x)); }, "power-log");
  }
  if (opts.builtin == "floor-log") {
    // The 1e-12 guard keeps grid points sitting exactly on e^m from
    // falling to the previous step through rounding of log().
    return MFunction::from_log([](double x) { return -std::floor(std::log(x) + 1e-12); },
                               "floor-log");
  }
  if (opts.builtin == "exp") {
    return MFunction::from_log([](double x) { return x; }, "exp");
  }
  raise(ErrorCode::InvalidArgument, "unknown builtin function '" + opts.builtin + "'");
}

struct Tabulated {
  std::vector<double> xs;
  std::vector<double> log_us;
};

Tabulated read_tabulated(const std::string& path, bool values_are_log) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  Tabulated tab;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',')) {
      raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected two columns");
    }
    double x, u;
    try {
      x = std::stod(a);
      u = std::stod(b);
    } catch (const std::exception&) {
      if (line_no == 1) continue;  // header row
      raise(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": not numeric");
    }
    if (!(x > 1.0)) {
      raise(ErrorCode::DomainError,
            "line " + std::to_string(line_no) + ": x = " + a + " must exceed 1");
    }
    if (!values_are_log && !(u > 0.0)) {
      raise(ErrorCode::DomainError,
            "line " + std::to_string(line_no) + ": U(x) = " + b + " must be positive");
    }
    tab.xs.push_back(x);
    tab.log_us.push_back(values_are_log ? u : std::log(u));
  }
  if (tab.xs.size() < 8) {
    raise(ErrorCode::ParseError, "tabulated input needs at least 8 rows");
  }
  return tab;
}

}  // namespace

MindexRunResult run_mindex(const MindexOptions& opts) {
  std::vector<double> grid;
  MFunction f = MFunction::from_log([](double) { return 0.0; }, "unset");

  if (!opts.input_path.empty()) {
    auto tab = read_tabulated(opts.input_path, opts.values_are_log);
    auto xs = std::make_shared<std::vector<double>>(std::move(tab.xs));
    auto lus = std::make_shared<std::vector<double>>(std::move(tab.log_us));
    grid = *xs;
    f = MFunction::from_log(
        [xs, lus](double x) {
          auto it = std::lower_bound(xs->begin(), xs->end(), x);
          if (it == xs->end() || *it != x) {
            raise(ErrorCode::DomainError, "x = " + std::to_string(x) + " is not tabulated");
          }
          return (*lus)[static_cast<std::size_t>(it - xs->begin())];
        },
        "tabulated");
  } else {
    f = builtin_mfunction(opts);
    grid = geometric_grid(opts.grid_from, opts.grid_to, opts.grid_points);
  }

  const MIndexDiagnostic diag = estimate_m_index(f, grid);

  const std::string dir = prepare_out_dir(opts.out_dir);
  const std::string csv_name = "mindex.csv";
  {
    std::ofstream out(join(dir, csv_name), std::ios::binary);
    if (!out) raise(ErrorCode::IoError, "cannot write mindex.csv");
    out << "x,log_log_ratio\n";
    for (std::size_t i = 0; i < diag.grid.size(); ++i) {
      out << format_double(diag.grid[i]) << ',' << format_double(diag.ratios[i]) << '\n';
    }
  }

  nlohmann::json doc{
      {"function", f.label()},
      {"estimated_index", diag.estimated_index},
      {"max_deviation_tail", diag.max_deviation_tail},
      {"drifting", diag.drifting},
      {"grid_points", diag.grid.size()},
      {"note", "finite-grid trend evidence; a finite grid cannot certify the limit"},
  };
  write_json(doc, join(dir, "mindex_summary.json"));

  RunManifest manifest = make_manifest(
      "mindex",
      {{"function", f.label()},
       {"grid_points", std::to_string(diag.grid.size())},
       {"input", opts.input_path.empty() ? "builtin:" + opts.builtin : opts.input_path}},
      0);
  manifest.outputs = {csv_name, "mindex_summary.json"};
  write_manifest(manifest, join(dir, "manifest.json"));

  MindexRunResult result;
  result.estimated_index = diag.estimated_index;
  result.max_deviation_tail = diag.max_deviation_tail;
  result.drifting = diag.drifting;
  result.csv_path = join(dir, csv_name);
  return result;
}

}  // namespace tailix
