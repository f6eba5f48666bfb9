#include "tailix/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "tailix/stats.hpp"

namespace tailix {

namespace detail {

void run_indexed(std::int64_t count, int workers, const std::function<void(std::int64_t)>& fn) {
  if (count <= 0) return;
  int w = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
  if (w < 1) w = 1;
  w = static_cast<int>(std::min<std::int64_t>(w, count));

  if (w == 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::int64_t first_error_index = count;

  auto worker = [&]() {
    while (true) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

NormalityResult summarize_t_samples(std::vector<double> t_samples, std::int64_t degenerate_count,
                                    std::int64_t replications, double alpha_for_ks) {
  if (degenerate_count * 100 > replications) {
    raise(ErrorCode::TooManyDegenerate,
          std::to_string(degenerate_count) + " of " + std::to_string(replications) +
              " replications hit a degenerate denominator (> 1%)");
  }
  NormalityResult result;
  result.degenerate_count = degenerate_count;
  result.mean = mean(t_samples);
  result.variance = variance(t_samples);
  result.ks_distance_vs_normal = ks_distance(t_samples, 0.0, alpha_for_ks);
  result.t_samples = std::move(t_samples);
  return result;
}

}  // namespace detail

KGrid KRule::grid_for(std::size_t n, double scale_c) const {
  switch (kind) {
    case Kind::PlotDefault:
      return KGrid::plot_default(n, scale_c);
    case Kind::Full:
      return KGrid::full(n);
    case Kind::Fractions:
      return KGrid::from_fractions(fractions, n);
    case Kind::PowerDelta:
      return KGrid::validated({single_k_for(n)}, n);
  }
  raise(ErrorCode::InvalidArgument, "unknown k rule");
}

std::int64_t KRule::single_k_for(std::size_t n) const {
  if (kind != Kind::PowerDelta) {
    raise(ErrorCode::InvalidArgument, "single k requires the n^delta rule");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) {
    raise(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  }
  const auto k = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), delta)));
  return std::max<std::int64_t>(1, std::min<std::int64_t>(k, static_cast<std::int64_t>(n) - 1));
}

std::string KRule::describe() const {
  switch (kind) {
    case Kind::PlotDefault:
      return "plot-default (dense to 100, geometric ratio 1.05 above, includes round(n*C))";
    case Kind::Full:
      return "full (every k in [1, n-1])";
    case Kind::Fractions: {
      std::string s = "fractions (";
      for (std::size_t i = 0; i < fractions.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(fractions[i]);
      }
      return s + ")";
    }
    case Kind::PowerDelta:
      return "k = floor(n^" + std::to_string(delta) + ")";
  }
  return "unknown";
}

void GridSpec::validate() const {
  if (alphas.empty() || Cs.empty() || ns.empty()) {
    raise(ErrorCode::InvalidArgument, "grid needs at least one alpha, C and n");
  }
  for (double a : alphas)
    if (!(a > 0.0)) raise(ErrorCode::InvalidArgument, "alpha must be positive");
  for (double c : Cs)
    if (!(c > 0.0)) raise(ErrorCode::InvalidArgument, "C must be positive");
  for (std::int64_t n : ns)
    if (n < 2) raise(ErrorCode::InvalidArgument, "n must be at least 2");
  if (replications < 1) raise(ErrorCode::InvalidArgument, "replications must be at least 1");
  if (k_rule.kind == KRule::Kind::PowerDelta && (!(k_rule.delta > 0.0) || !(k_rule.delta < 1.0))) {
    raise(ErrorCode::InvalidArgument, "delta must lie in (0, 1)");
  }
}

const char* SuiteVerdict::status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

NormalityResult lemma2_experiment(std::int64_t n, std::int64_t k, std::int64_t replications,
                                  std::uint64_t base_seed, int workers) {
  if (n < 2 || k < 1 || k > n - 1) raise(ErrorCode::KOutOfRange, "need 1 <= k <= n-1");
  if (replications < 1) raise(ErrorCode::InvalidArgument, "replications must be at least 1");

  const double log_nk = std::log(static_cast<double>(n) / static_cast<double>(k));
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  std::vector<double> zs(static_cast<std::size_t>(replications));
  detail::run_indexed(replications, workers, [&](std::int64_t r) {
    RngStream stream(base_seed, static_cast<std::uint64_t>(r));
    const OrderedSample os = renyi_exponential_order_stats(n, stream);
    const double e_nk = os.order_statistic(static_cast<std::size_t>(n - k));
    zs[static_cast<std::size_t>(r)] = sqrt_k * (e_nk - log_nk);
  });

  NormalityResult result = detail::summarize_t_samples(std::move(zs), 0, replications, 1.0);
  result.params.n = n;
  result.params.k = k;
  result.params.replications = replications;
  result.params.base_seed = base_seed;
  return result;
}

RatioSummary lemma3_ratio_experiment(std::int64_t n, std::int64_t k, std::int64_t replications,
                                     std::uint64_t base_seed, int workers) {
  if (n < 2 || k < 1 || k > n - 1) raise(ErrorCode::KOutOfRange, "need 1 <= k <= n-1");
  if (replications < 1) raise(ErrorCode::InvalidArgument, "replications must be at least 1");

  const double log_nk = std::log(static_cast<double>(n) / static_cast<double>(k));
  std::vector<double> ratios(static_cast<std::size_t>(replications));
  detail::run_indexed(replications, workers, [&](std::int64_t r) {
    RngStream stream(base_seed, static_cast<std::uint64_t>(r));
    const OrderedSample os = renyi_exponential_order_stats(n, stream);
    ratios[static_cast<std::size_t>(r)] = os.order_statistic(static_cast<std::size_t>(n - k)) / log_nk;
  });

  RatioSummary summary;
  summary.median = quantile(ratios, 0.5);
  summary.lower05 = quantile(ratios, 0.05);
  summary.upper95 = quantile(ratios, 0.95);
  summary.ratios = std::move(ratios);
  summary.params.n = n;
  summary.params.k = k;
  summary.params.replications = replications;
  summary.params.base_seed = base_seed;
  return summary;
}

ConsistencyCurve consistency_experiment(const ConsistencyModel& model, const GridSpec& spec,
                                        int workers) {
  spec.validate();
  if (spec.k_rule.kind != KRule::Kind::PowerDelta) {
    raise(ErrorCode::InvalidArgument, "consistency sweeps use the k = floor(n^delta) rule");
  }

  ConsistencyCurve curve;
  curve.k_rule = spec.k_rule.describe();
  curve.replications = spec.replications;
  curve.base_seed = spec.base_seed;

  double alpha_true = 1.0;
  double scale_c = 1.0;
  const ParetoModel* pareto = std::get_if<ParetoModel>(&model);
  if (pareto) {
    alpha_true = pareto->alpha;
    scale_c = pareto->C;
    curve.model_label = "pareto";
  } else {
    curve.model_label = "floor-log";  // tail index 1, estimated with C = 1
  }
  curve.alpha_true = alpha_true;

  const double inv_alpha = 1.0 / alpha_true;
  const ScaleAssumption scale{scale_c};

  for (std::size_t ni = 0; ni < spec.ns.size(); ++ni) {
    const std::int64_t n = spec.ns[ni];
    const std::int64_t k = spec.k_rule.single_k_for(static_cast<std::size_t>(n));
    const std::int64_t R = spec.replications;

    std::vector<double> errors(static_cast<std::size_t>(R));
    std::vector<char> degenerate(static_cast<std::size_t>(R), 0);
    detail::run_indexed(R, workers, [&](std::int64_t r) {
      const std::uint64_t stream_id = (static_cast<std::uint64_t>(ni) << 32) |
                                      static_cast<std::uint64_t>(r);
      RngStream stream(spec.base_seed, stream_id);
      RawSample raw = pareto ? sample_pareto(n, *pareto, stream) : sample_floor_log(n, stream);
      const OrderedSample os = OrderedSample::sort_from(raw);
      try {
        const double alpha_hat = cadena_scaled(os, k, scale);
        errors[static_cast<std::size_t>(r)] = std::abs(1.0 / alpha_hat - inv_alpha);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateDenominator) throw;
        degenerate[static_cast<std::size_t>(r)] = 1;
      }
    });

    std::vector<double> defined;
    std::int64_t degenerate_count = 0;
    for (std::int64_t r = 0; r < R; ++r) {
      if (degenerate[static_cast<std::size_t>(r)]) {
        ++degenerate_count;
      } else {
        defined.push_back(errors[static_cast<std::size_t>(r)]);
      }
    }
    if (defined.empty()) {
      raise(ErrorCode::TooManyDegenerate, "all replications degenerate at n = " + std::to_string(n));
    }

    curve.ns.push_back(n);
    curve.ks.push_back(k);
    curve.median_errors.push_back(quantile(defined, 0.5));
    curve.degenerate_counts.push_back(degenerate_count);
  }
  return curve;
}

NormalityResult normality_experiment(const HallTailModel& model, std::int64_t n, std::int64_t k,
                                     std::int64_t replications, std::uint64_t base_seed,
                                     int workers) {
  if (n < 2 || k < 1 || k > n - 1) raise(ErrorCode::KOutOfRange, "need 1 <= k <= n-1");
  if (replications < 1) raise(ErrorCode::InvalidArgument, "replications must be at least 1");

  const double alpha = model.alpha();
  const double inv_alpha = 1.0 / alpha;
  const double sqrt_k = std::sqrt(static_cast<double>(k));
  const double ratio = static_cast<double>(n) / static_cast<double>(k);
  const double scale_term = std::log(ratio * model.C());  // log(n/k) + log(C)
  const ScaleAssumption scale{model.C()};

  std::vector<double> ts(static_cast<std::size_t>(replications));
  std::vector<char> degenerate(static_cast<std::size_t>(replications), 0);
  detail::run_indexed(replications, workers, [&](std::int64_t r) {
    RngStream stream(base_seed, static_cast<std::uint64_t>(r));
    RawSample raw = sample_hall(n, model, stream);
    const OrderedSample os = OrderedSample::sort_from(raw);
    try {
      const double alpha_hat = cadena_scaled(os, k, scale);
      ts[static_cast<std::size_t>(r)] = sqrt_k * scale_term * (1.0 / alpha_hat - inv_alpha);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateDenominator) throw;
      degenerate[static_cast<std::size_t>(r)] = 1;
    }
  });

  std::vector<double> defined;
  defined.reserve(ts.size());
  std::int64_t degenerate_count = 0;
  for (std::int64_t r = 0; r < replications; ++r) {
    if (degenerate[static_cast<std::size_t>(r)]) {
      ++degenerate_count;
    } else {
      defined.push_back(ts[static_cast<std::size_t>(r)]);
    }
  }

  // Limiting law of T: the delta method on 1/alpha_hat = log(X)/L with
  // Var(log X) ~ 1/(alpha^2 k) gives Var(T) -> 1/alpha^2, so the
  // reference normal has scale 1/alpha.
  NormalityResult result =
      detail::summarize_t_samples(std::move(defined), degenerate_count, replications, 1.0 / alpha);
  result.params.alpha = alpha;
  result.params.C = model.C();
  result.params.beta = model.beta();
  result.params.n = n;
  result.params.k = k;
  result.params.replications = replications;
  result.params.base_seed = base_seed;
  return result;
}

std::vector<CellSeries> simulation_grid(const GridSpec& spec, int workers) {
  spec.validate();

  struct Cell {
    double alpha;
    double C;
    std::int64_t n;
  };
  std::vector<Cell> cells;
  for (double a : spec.alphas)
    for (double c : spec.Cs)
      for (std::int64_t n : spec.ns) cells.push_back({a, c, n});

  std::vector<CellSeries> out(cells.size());
  detail::run_indexed(static_cast<std::int64_t>(cells.size()), workers, [&](std::int64_t i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    RngStream stream(spec.base_seed, static_cast<std::uint64_t>(i));
    const ParetoModel model{cell.alpha, cell.C};
    const OrderedSample os = OrderedSample::sort_from(sample_pareto(cell.n, model, stream));
    const KGrid grid = spec.k_rule.grid_for(static_cast<std::size_t>(cell.n), cell.C);

    CellSeries result;
    result.alpha = cell.alpha;
    result.C = cell.C;
    result.n = cell.n;
    result.cell_index = static_cast<std::size_t>(i);

    const EstimatorKind kinds[] = {EstimatorKind::CadenaScaled, EstimatorKind::Hill,
                                   EstimatorKind::HillReciprocal, EstimatorKind::Moment,
                                   EstimatorKind::MomentReciprocal};
    for (EstimatorKind kind : kinds) {
      EstimatorSpec est;
      est.kind = kind;
      est.scale_c = cell.C;
      EstimateSeries series = estimate_series(os, est, grid);
      series.params.emplace_back("alpha_ref", cell.alpha);
      series.params.emplace_back("cell_seed_stream", static_cast<double>(i));
      result.series.push_back(std::move(series));
    }
    out[static_cast<std::size_t>(i)] = std::move(result);
  });
  return out;
}

double renyi_equivalence_ks(std::int64_t n, std::int64_t k, std::int64_t replications,
                            std::uint64_t base_seed, int workers) {
  if (n < 2 || k < 1 || k > n - 1) raise(ErrorCode::KOutOfRange, "need 1 <= k <= n-1");
  if (replications < 1) raise(ErrorCode::InvalidArgument, "replications must be at least 1");

  const auto R = static_cast<std::size_t>(replications);
  std::vector<double> renyi(R), direct(R);
  // Disjoint stream-id ranges keep the two arms independent.
  detail::run_indexed(replications, workers, [&](std::int64_t r) {
    RngStream stream(base_seed, static_cast<std::uint64_t>(r));
    const OrderedSample os = renyi_exponential_order_stats(n, stream);
    renyi[static_cast<std::size_t>(r)] = os.order_statistic(static_cast<std::size_t>(n - k));
  });
  detail::run_indexed(replications, workers, [&](std::int64_t r) {
    RngStream stream(base_seed, (1ull << 32) | static_cast<std::uint64_t>(r));
    RawSample raw = sample_exponential(n, stream);
    const OrderedSample os = OrderedSample::sort_from(raw);
    direct[static_cast<std::size_t>(r)] = os.order_statistic(static_cast<std::size_t>(n - k));
  });
  return ks_distance_two_sample(renyi, direct);
}

namespace {

SuiteCheck make_check(std::string name, double value, double lo, double hi, std::string derivation) {
  SuiteCheck check;
  check.name = std::move(name);
  check.value = value;
  check.bound_lo = lo;
  check.bound_hi = hi;
  check.derivation = std::move(derivation);
  check.pass = value >= lo && value <= hi;
  return check;
}

SuiteVerdict finish_verdict(std::vector<SuiteCheck> checks, std::int64_t replications) {
  SuiteVerdict verdict;
  verdict.checks = std::move(checks);
  if (replications < kMinConclusiveReplications) {
    verdict.status = SuiteVerdict::Status::Inconclusive;
    verdict.note = "below the minimum of " + std::to_string(kMinConclusiveReplications) +
                   " replications; bounds are not informative";
    return verdict;
  }
  const bool all_pass = std::all_of(verdict.checks.begin(), verdict.checks.end(),
                                    [](const SuiteCheck& c) { return c.pass; });
  verdict.status = all_pass ? SuiteVerdict::Status::Pass : SuiteVerdict::Status::Fail;
  return verdict;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SuiteVerdict evaluate_lemma2(const NormalityResult& result) {
  const double R = static_cast<double>(result.params.replications);
  const double k = static_cast<double>(result.params.k);
  const double mean_bound = 3.0 / std::sqrt(R) + 0.5 / std::sqrt(k);
  const double var_half_width = 3.0 * std::sqrt(2.0 / R) + 0.05;
  const double ks_bound = 1.63 / std::sqrt(R) + 0.014;

  std::vector<SuiteCheck> checks;
  checks.push_back(make_check(
      "mean", result.mean, -mean_bound, mean_bound,
      "3/sqrt(R) = " + fmt(3.0 / std::sqrt(R)) + " Monte Carlo noise plus 1/(2*sqrt(k)) = " +
          fmt(0.5 / std::sqrt(k)) + " harmonic-sum bias"));
  checks.push_back(make_check("variance", result.variance, 1.0 - var_half_width,
                              1.0 + var_half_width,
                              "3*sqrt(2/R) = " + fmt(3.0 * std::sqrt(2.0 / R)) +
                                  " chi-square concentration plus 0.05 finite-n slack"));
  checks.push_back(make_check("ks_vs_standard_normal", result.ks_distance_vs_normal, 0.0, ks_bound,
                              "1% KS critical 1.63/sqrt(R) = " + fmt(1.63 / std::sqrt(R)) +
                                  " plus 0.014 asymptotic slack"));
  return finish_verdict(std::move(checks), result.params.replications);
}

SuiteVerdict evaluate_normality(const NormalityResult& result, double alpha) {
  const double R = static_cast<double>(result.params.replications);
  const double k = static_cast<double>(result.params.k);
  // T concentrates around a N(0, 1/alpha^2) limit: the delta method on
  // 1/alpha_hat = log(X)/L gives Var(T) = k L^2 Var(log X) -> 1/alpha^2
  // since Var(log X) ~ 1/(alpha^2 k). Every bound below scales with the
  // limiting sd 1/alpha.
  const double limit_sd = 1.0 / alpha;
  const double mean_bound = limit_sd * (3.0 / std::sqrt(R) + 0.5 / std::sqrt(k));
  const double var_lo = 0.8 * limit_sd * limit_sd;
  const double var_hi = 1.2 * limit_sd * limit_sd;
  const double ks_bound = 1.63 / std::sqrt(R) + 0.014;

  std::vector<SuiteCheck> checks;
  checks.push_back(make_check(
      "mean", result.mean, -mean_bound, mean_bound,
      "(3/sqrt(R) + 1/(2*sqrt(k))) / alpha = " + fmt(mean_bound) +
          " (CLT noise on the Monte Carlo mean plus harmonic-sum bias, at the limiting sd "
          "1/alpha)"));
  checks.push_back(make_check(
      "variance", result.variance, var_lo, var_hi,
      "[0.8, 1.2] / alpha^2 around the delta-method limit Var(T) = 1/alpha^2; "
      "3*sqrt(2/R) = " + fmt(3.0 * std::sqrt(2.0 / R)) +
          " concentration widened for finite-n deviation"));
  checks.push_back(make_check("ks_vs_limit_normal", result.ks_distance_vs_normal, 0.0, ks_bound,
                              "distance to N(0, 1/alpha^2); 1% KS critical 1.63/sqrt(R) = " +
                                  fmt(1.63 / std::sqrt(R)) + " plus 0.014 asymptotic slack"));
  return finish_verdict(std::move(checks), result.params.replications);
}

SuiteVerdict evaluate_consistency(const ConsistencyCurve& curve) {
  std::vector<SuiteCheck> checks;

  bool decreasing = true;
  for (std::size_t i = 1; i < curve.median_errors.size(); ++i) {
    if (!(curve.median_errors[i] < curve.median_errors[i - 1])) decreasing = false;
  }
  if (curve.median_errors.size() >= 2) {
    SuiteCheck trend;
    trend.name = "median_errors_strictly_decreasing";
    trend.value = decreasing ? 1.0 : 0.0;
    trend.bound_lo = 1.0;
    trend.bound_hi = 1.0;
    trend.derivation = "median |1/alpha_hat - 1/alpha| must shrink as n grows";
    trend.pass = decreasing;
    checks.push_back(trend);
  }

  const double final_median = curve.median_errors.back();
  const double k = static_cast<double>(curve.ks.back());
  const double n = static_cast<double>(curve.ns.back());
  const double log_nk = std::log(n / k);
  double bound;
  std::string derivation;
  if (curve.model_label == "floor-log") {
    bound = 1.15 / log_nk;
    derivation = "integer-valued log X keeps |1/alpha_hat - 1| within about 1/log(n/k) = " +
                 fmt(1.0 / log_nk) + "; 15% slack";
  } else {
    bound = 5.0 * curve.alpha_true / (std::sqrt(k) * log_nk);
    derivation = "limit scale alpha/(sqrt(k)*log(n/k)) = " +
                 fmt(curve.alpha_true / (std::sqrt(k) * log_nk)) + " with factor-5 slack";
  }
  checks.push_back(make_check("final_median_error", final_median, 0.0, bound, derivation));

  return finish_verdict(std::move(checks), curve.replications);
}

}  // namespace tailix
