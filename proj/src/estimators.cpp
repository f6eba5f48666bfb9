#include "tailix/estimators.hpp"

#include <cmath>

namespace tailix {

namespace {

void check_k(const OrderedSample& os, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(os.size());
  if (k < 1 || k > n - 1) {
    raise(ErrorCode::KOutOfRange,
          "k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "] for n = " +
              std::to_string(n));
  }
}

// The single upper order statistic the log-ratio estimators read: the
// k-th largest observation, the point where the empirical tail steps
// through k/n.
double upper_stat(const OrderedSample& os, std::int64_t k) {
  return os.kth_largest(static_cast<std::size_t>(k));
}

double log_ratio(const OrderedSample& os, std::int64_t k, double numerator) {
  const double x = upper_stat(os, k);
  if (x == 1.0) {
    raise(ErrorCode::DegenerateDenominator,
          "order statistic at k = " + std::to_string(k) + " equals 1; log is zero");
  }
  if (numerator == 0.0) return 0.0;  // avoid a signed zero from 0/negative
  return numerator / std::log(x);
}

}  // namespace

double cadena_basic(const OrderedSample& os, std::int64_t k) {
  check_k(os, k);
  const double ratio = static_cast<double>(os.size()) / static_cast<double>(k);
  return log_ratio(os, k, std::log(ratio));
}

double cadena_scaled(const OrderedSample& os, std::int64_t k, const ScaleAssumption& scale) {
  check_k(os, k);
  if (!(scale.C > 0.0) || !std::isfinite(scale.C)) {
    raise(ErrorCode::InvalidArgument, "scale constant C must be positive and finite");
  }
  const double ratio = static_cast<double>(os.size()) / static_cast<double>(k);
  // One log over the product: log(n/k) + log(C) in exact arithmetic, and
  // exactly zero when (n/k)*C rounds to 1, which keeps the k = n*C zero
  // crossing exact. With C = 1 the product is untouched, so the result
  // matches cadena_basic bit for bit.
  return log_ratio(os, k, std::log(ratio * scale.C));
}

double variant_shift(const OrderedSample& os, std::int64_t k, const VariantShiftConfig& cfg) {
  check_k(os, k);
  if (!std::isfinite(cfg.c1) || !std::isfinite(cfg.c2)) {
    raise(ErrorCode::InvalidArgument, "shift constants must be finite");
  }
  const double x = upper_stat(os, k);
  const double denom = cfg.c2 + std::log(x);
  if (denom == 0.0) {
    raise(ErrorCode::DegenerateDenominator,
          "C2 + log(X) vanishes at k = " + std::to_string(k));
  }
  const double ratio = static_cast<double>(os.size()) / static_cast<double>(k);
  return (cfg.c1 + std::log(ratio)) / denom;
}

double variant_average(const OrderedSample& os, const VariantAverageConfig& cfg) {
  const auto n = static_cast<std::int64_t>(os.size());
  if (cfg.k1 < 1 || cfg.k1 >= cfg.k2 || cfg.k2 > n - 1) {
    raise(ErrorCode::InvalidArgument,
          "averaging window needs 1 <= k1 < k2 <= n-1, got [" + std::to_string(cfg.k1) + ", " +
              std::to_string(cfg.k2) + "] for n = " + std::to_string(n));
  }
  double sum = 0.0;
  for (std::int64_t k = cfg.k1; k <= cfg.k2; ++k) {
    try {
      sum += cadena_basic(os, k);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateDenominator) {
        raise(ErrorCode::DegenerateDenominator,
              "degenerate denominator inside averaging window at k = " + std::to_string(k));
      }
      throw;
    }
  }
  return sum / static_cast<double>(cfg.k2 - cfg.k1 + 1);
}

namespace {

// Shared kernel for the Hill and moment statistics: the j-th moment of
// the log-excesses of the top k observations over the (k+1)-th largest.
double log_excess_moment(const OrderedSample& os, std::int64_t k, int j) {
  check_k(os, k);
  const auto n = os.size();
  const double base = std::log(os.order_statistic(n - static_cast<std::size_t>(k)));
  double sum = 0.0;
  for (std::int64_t i = 0; i < k; ++i) {
    const double excess = std::log(os.order_statistic(n - static_cast<std::size_t>(i))) - base;
    sum += (j == 1) ? excess : excess * excess;
  }
  return sum / static_cast<double>(k);
}

}  // namespace

double hill(const OrderedSample& os, std::int64_t k) { return log_excess_moment(os, k, 1); }

double moment_stat(const OrderedSample& os, std::int64_t k, int j) {
  if (j != 1 && j != 2) {
    raise(ErrorCode::InvalidArgument, "moment order must be 1 or 2");
  }
  return log_excess_moment(os, k, j);
}

double dedh_moment(const OrderedSample& os, std::int64_t k) {
  const double m1 = log_excess_moment(os, k, 1);
  const double m2 = log_excess_moment(os, k, 2);
  if (m2 == 0.0) {
    raise(ErrorCode::DegenerateMoments, "second log-excess moment is zero at k = " + std::to_string(k));
  }
  const double r = (m1 * m1) / m2;
  if (r == 1.0) {
    raise(ErrorCode::DegenerateMoments,
          "squared first moment equals second moment at k = " + std::to_string(k));
  }
  return m1 + 1.0 - 0.5 / (1.0 - r);
}

std::string EstimatorSpec::tag() const {
  switch (kind) {
    case EstimatorKind::CadenaBasic: return "cadena";
    case EstimatorKind::CadenaScaled: return "cadena-scaled";
    case EstimatorKind::VariantShift: return "shift";
    case EstimatorKind::VariantAverage: return "average";
    case EstimatorKind::Hill: return "hill";
    case EstimatorKind::HillReciprocal: return "hill-recip";
    case EstimatorKind::Moment: return "moment";
    case EstimatorKind::MomentReciprocal: return "moment-recip";
  }
  return "unknown";
}

std::optional<EstimatorKind> EstimatorSpec::kind_from_tag(const std::string& tag) {
  if (tag == "cadena") return EstimatorKind::CadenaBasic;
  if (tag == "cadena-scaled") return EstimatorKind::CadenaScaled;
  if (tag == "shift") return EstimatorKind::VariantShift;
  if (tag == "average") return EstimatorKind::VariantAverage;
  if (tag == "hill") return EstimatorKind::Hill;
  if (tag == "hill-recip") return EstimatorKind::HillReciprocal;
  if (tag == "moment") return EstimatorKind::Moment;
  if (tag == "moment-recip") return EstimatorKind::MomentReciprocal;
  return std::nullopt;
}

double evaluate_estimator(const OrderedSample& os, std::int64_t k, const EstimatorSpec& spec) {
  switch (spec.kind) {
    case EstimatorKind::CadenaBasic:
      return cadena_basic(os, k);
    case EstimatorKind::CadenaScaled:
      return cadena_scaled(os, k, ScaleAssumption{spec.scale_c});
    case EstimatorKind::VariantShift:
      return variant_shift(os, k, VariantShiftConfig{spec.shift_c1, spec.shift_c2});
    case EstimatorKind::VariantAverage:
      return variant_average(os, VariantAverageConfig{k, k + spec.average_window});
    case EstimatorKind::Hill:
      return hill(os, k);
    case EstimatorKind::HillReciprocal: {
      const double h = hill(os, k);
      if (h == 0.0) {
        raise(ErrorCode::DegenerateDenominator, "Hill estimate is zero at k = " + std::to_string(k));
      }
      return 1.0 / h;
    }
    case EstimatorKind::Moment:
      return dedh_moment(os, k);
    case EstimatorKind::MomentReciprocal: {
      const double m = dedh_moment(os, k);
      if (m == 0.0) {
        raise(ErrorCode::DegenerateDenominator,
              "moment estimate is zero at k = " + std::to_string(k));
      }
      return 1.0 / m;
    }
  }
  raise(ErrorCode::InvalidArgument, "unknown estimator kind");
}

EstimateSeries estimate_series(const OrderedSample& os, const EstimatorSpec& spec,
                               const KGrid& grid) {
  const auto n = static_cast<std::int64_t>(os.size());
  if (!grid.ks().empty() && grid.ks().back() > n - 1) {
    raise(ErrorCode::KOutOfRange, "k grid exceeds n-1 for n = " + std::to_string(n));
  }
  if (spec.kind == EstimatorKind::CadenaScaled &&
      (!(spec.scale_c > 0.0) || !std::isfinite(spec.scale_c))) {
    raise(ErrorCode::InvalidArgument, "scale constant C must be positive and finite");
  }
  if (spec.kind == EstimatorKind::VariantShift &&
      (!std::isfinite(spec.shift_c1) || !std::isfinite(spec.shift_c2))) {
    raise(ErrorCode::InvalidArgument, "shift constants must be finite");
  }
  if (spec.kind == EstimatorKind::VariantAverage && spec.average_window < 1) {
    raise(ErrorCode::InvalidArgument, "averaging window must be at least 1");
  }
  EstimateSeries series;
  series.estimator_tag = spec.tag();
  series.params.emplace_back("n", static_cast<double>(n));
  switch (spec.kind) {
    case EstimatorKind::CadenaScaled:
      series.params.emplace_back("C", spec.scale_c);
      break;
    case EstimatorKind::VariantShift:
      series.params.emplace_back("C1", spec.shift_c1);
      series.params.emplace_back("C2", spec.shift_c2);
      break;
    case EstimatorKind::VariantAverage:
      series.params.emplace_back("window", static_cast<double>(spec.average_window));
      break;
    default:
      break;
  }
  series.points.reserve(grid.size());
  for (std::int64_t k : grid.ks()) {
    EstimateSeries::Point point;
    point.k = k;
    try {
      const double value = evaluate_estimator(os, k, spec);
      if (std::isfinite(value)) point.value = value;
    } catch (const Error& e) {
      const bool window_overflow = spec.kind == EstimatorKind::VariantAverage &&
                                   e.code() == ErrorCode::InvalidArgument;
      if (e.code() != ErrorCode::DegenerateDenominator &&
          e.code() != ErrorCode::DegenerateMoments && !window_overflow) {
        throw;
      }
      // undefined point; the k stays in the series
    }
    series.points.push_back(point);
  }
  return series;
}

}  // namespace tailix
