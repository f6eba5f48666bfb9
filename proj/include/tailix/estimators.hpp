#ifndef TAILIX_ESTIMATORS_HPP
#define TAILIX_ESTIMATORS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailix/sample.hpp"

namespace tailix {

// Assumed tail scale constant C of a survival function C * x^(-alpha).
struct ScaleAssumption {
  double C = 1.0;
};

// Constants of the shifted-ratio variant (C1 + log(n/k)) / (C2 + log X).
struct VariantShiftConfig {
  double c1 = 0.0;
  double c2 = 0.0;
};

// Averaging window [k1, k2]; k2 - k1 is treated as a fixed constant.
struct VariantAverageConfig {
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
};

/**
 * Log-ratio tail index estimate from a single upper order statistic:
 *
 *     log(n/k) / log(X)
 *
 * where X is the k-th largest observation. May be negative when X < 1;
 * values are returned as-is (no clamping) since the instability near
 * k = n*C is a feature of the estimator worth seeing in plots.
 *
 * Throws KOutOfRange unless 1 <= k <= n-1 and DegenerateDenominator when
 * X == 1 (log X == 0).
 */
double cadena_basic(const OrderedSample& os, std::int64_t k);

/**
 * Scale-corrected form (log(n/k) + log C) / log(X). The numerator is
 * evaluated as log((n/k) * C) in one rounding so that it is exactly zero
 * whenever (n/k) * C rounds to 1 (in particular at k = n*C), and so the
 * C = 1 case reproduces cadena_basic bit for bit.
 */
double cadena_scaled(const OrderedSample& os, std::int64_t k, const ScaleAssumption& scale);

// Shifted-ratio variant (C1 + log(n/k)) / (C2 + log X). Reduces to
// cadena_basic at C1 = C2 = 0.
double variant_shift(const OrderedSample& os, std::int64_t k, const VariantShiftConfig& cfg);

// Arithmetic mean of cadena_basic over k = k1..k2 inclusive. A degenerate
// denominator at any k in the window is reported with that k.
double variant_average(const OrderedSample& os, const VariantAverageConfig& cfg);

/**
 * Hill estimator: mean log-excess of the top k observations over the
 * (k+1)-th largest,
 *
 *     (1/k) * sum_{i=0}^{k-1} [ log(X_{(n-i)}) - log(X_{(n-k)}) ]
 *
 * (X_{(j)} the j-th smallest). Always >= 0 and invariant under scaling of
 * the data.
 */
double hill(const OrderedSample& os, std::int64_t k);

// j-th empirical moment of the log-excesses, j in {1, 2}. Order 1 is
// identical to hill() (same code path, so the equality is bitwise).
double moment_stat(const OrderedSample& os, std::int64_t k, int j);

// Moment estimator of Dekkers, Einmahl and de Haan:
//   M1 + 1 - (1/2) * (1 - M1^2 / M2)^(-1).
// Throws DegenerateMoments when M2 == 0 or M1^2 == M2.
double dedh_moment(const OrderedSample& os, std::int64_t k);

enum class EstimatorKind {
  CadenaBasic,
  CadenaScaled,
  VariantShift,
  VariantAverage,
  Hill,
  HillReciprocal,
  Moment,
  MomentReciprocal,
};

// Selector plus the parameters the selected estimator needs. For
// VariantAverage in a series, each grid point k is the window start and
// average_window = k2 - k1 is held constant.
struct EstimatorSpec {
  EstimatorKind kind = EstimatorKind::CadenaBasic;
  double scale_c = 1.0;
  double shift_c1 = 0.0;
  double shift_c2 = 0.0;
  std::int64_t average_window = 30;

  // Stable tag used in CLI flags, series files and file names.
  std::string tag() const;

  static std::optional<EstimatorKind> kind_from_tag(const std::string& tag);
};

// One estimate per k. Points where the estimator is degenerate carry no
// value (series keep their full length; plots show gaps, never a made-up
// number). Defined values are always finite.
struct EstimateSeries {
  std::string estimator_tag;
  std::vector<std::pair<std::string, double>> params;

  struct Point {
    std::int64_t k = 0;
    std::optional<double> value;
  };
  std::vector<Point> points;
};

// Evaluates one estimator at a single k; throws on degeneracies.
double evaluate_estimator(const OrderedSample& os, std::int64_t k, const EstimatorSpec& spec);

// Evaluates the selected estimator over the whole grid, mapping
// degeneracies to undefined points.
EstimateSeries estimate_series(const OrderedSample& os, const EstimatorSpec& spec, const KGrid& grid);

}  // namespace tailix

#endif  // TAILIX_ESTIMATORS_HPP
