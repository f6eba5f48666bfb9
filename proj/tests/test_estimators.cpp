#include <cmath>
#include <vector>

#include "doctest.h"
#include "tailix/estimators.hpp"
#include "tailix/sampling.hpp"

using namespace tailix;

namespace {

// Strict Pareto quantile grid x_j = (n/j)^(1/alpha), j = 1..n. The k-th
// largest value is exactly (n/k)^(1/alpha), so the log-ratio estimator
// returns alpha at every k.
OrderedSample pareto_quantile_grid(int n, double alpha) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    values.push_back(std::pow(static_cast<double>(n) / j, 1.0 / alpha));
  }
  return OrderedSample::sort_from(RawSample(std::move(values)));
}

OrderedSample seeded_pareto(std::int64_t n, double alpha, double c, std::uint64_t seed,
                            std::uint64_t stream_id) {
  RngStream stream(seed, stream_id);
  return OrderedSample::sort_from(sample_pareto(n, ParetoModel{alpha, c}, stream));
}

}  // namespace

TEST_CASE("log-ratio estimator with matched logs") {
  // Exact grid with alpha = 1, n = 1000: the 10th largest value is 100,
  // so both logs equal log(100).
  OrderedSample os = pareto_quantile_grid(1000, 1.0);
  CHECK(os.kth_largest(10) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(cadena_basic(os, 10) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("log-ratio estimator is exact on strict Pareto quantiles") {
  OrderedSample os = pareto_quantile_grid(100, 2.0);
  CHECK(os.kth_largest(4) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(cadena_basic(os, 4) == doctest::Approx(2.0).epsilon(1e-13));

  for (double alpha : {0.1, 1.0, 1.5}) {
    OrderedSample grid = pareto_quantile_grid(100, alpha);
    for (std::int64_t k = 1; k <= 99; ++k) {
      CHECK(std::abs(cadena_basic(grid, k) - alpha) <= 1e-12);
    }
  }
}

TEST_CASE("log-ratio estimator k range and degeneracy errors") {
  OrderedSample os = OrderedSample::sort_from(RawSample({2.0, 3.0, 4.0}));
  CHECK_THROWS_AS(cadena_basic(os, 0), Error);
  CHECK_THROWS_AS(cadena_basic(os, 3), Error);

  OrderedSample with_one = OrderedSample::sort_from(RawSample({0.5, 1.0, 2.0, 4.0}));
  CHECK_NOTHROW(cadena_basic(with_one, 1));
  CHECK_THROWS_AS(cadena_basic(with_one, 3), Error);  // 3rd largest is 1.0
  try {
    cadena_basic(with_one, 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("log-ratio estimator can go negative below 1") {
  OrderedSample os = OrderedSample::sort_from(RawSample({0.2, 0.3, 0.5, 0.7}));
  CHECK(cadena_basic(os, 2) < 0.0);  // 2nd largest 0.5, log negative
}

TEST_CASE("Monte Carlo concentration of the basic estimator") {
  // Pareto alpha = 1, C = 1, n = 1e5, k = 316: the estimate should land
  // in [0.8, 1.2] for at least 95% of 200 independent streams (the
  // asymptotic sd is about 0.01, so misses are rare).
  int hits = 0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    OrderedSample os = seeded_pareto(100000, 1.0, 1.0, 20240601, r);
    const double est = cadena_basic(os, 316);
    if (est >= 0.8 && est <= 1.2) ++hits;
  }
  CHECK(hits >= 190);
}

TEST_CASE("scale-corrected numerator vanishes exactly at k = n*C") {
  // Data-independent zero: with n = 1000, k = 100, C = 0.1 the numerator
  // is log(1) = 0.
  RngStream stream(5150, 0);
  OrderedSample os = OrderedSample::sort_from(sample_exponential(1000, stream));
  CHECK(cadena_scaled(os, 100, ScaleAssumption{0.1}) == 0.0);
  CHECK(!std::signbit(cadena_scaled(os, 100, ScaleAssumption{0.1})));

  OrderedSample os2 = seeded_pareto(10000, 1.0, 0.1, 99, 0);
  CHECK(cadena_scaled(os2, 1000, ScaleAssumption{0.1}) == 0.0);
}

TEST_CASE("scale-corrected estimator reduces to the basic one at C = 1") {
  OrderedSample os = seeded_pareto(2000, 1.5, 1.0, 7, 3);
  for (std::int64_t k : {1, 5, 37, 500, 1999}) {
    CHECK(cadena_scaled(os, k, ScaleAssumption{1.0}) == cadena_basic(os, k));
  }
}

TEST_CASE("scale-corrected estimator direct value") {
  // Exact grid alpha = 2, n = 100, k = 4 reads X = 5; with C = e the
  // value is (log 25 + 1)/log 5 = 2 + 1/log 5.
  OrderedSample os = pareto_quantile_grid(100, 2.0);
  const double expected = 2.0 + 1.0 / std::log(5.0);
  CHECK(cadena_scaled(os, 4, ScaleAssumption{std::exp(1.0)}) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(2.6213349345596119).epsilon(1e-12));
}

TEST_CASE("scale assumption validates C") {
  OrderedSample os = pareto_quantile_grid(100, 1.0);
  CHECK_THROWS_AS(cadena_scaled(os, 5, ScaleAssumption{0.0}), Error);
  CHECK_THROWS_AS(cadena_scaled(os, 5, ScaleAssumption{-2.0}), Error);
}

TEST_CASE("shift variant reductions and direct value") {
  OrderedSample os = seeded_pareto(2000, 1.0, 1.0, 11, 5);
  for (std::int64_t k : {1, 10, 100, 1500}) {
    CHECK(variant_shift(os, k, VariantShiftConfig{0.0, 0.0}) == cadena_basic(os, k));
    const double scaled = cadena_scaled(os, k, ScaleAssumption{2.5});
    const double shifted = variant_shift(os, k, VariantShiftConfig{std::log(2.5), 0.0});
    CHECK(shifted == doctest::Approx(scaled).epsilon(1e-12));
  }

  // 90 small values and 10 copies of e: at k = 10 the estimator reads e.
  std::vector<double> values(90, 0.5);
  values.insert(values.end(), 10, std::exp(1.0));
  OrderedSample crafted = OrderedSample::sort_from(RawSample(values));
  const double v = variant_shift(crafted, 10, VariantShiftConfig{1.0, 1.0});
  CHECK(v == doctest::Approx((1.0 + std::log(10.0)) / 2.0).epsilon(1e-12));
  CHECK(v == doctest::Approx(1.6512925464970228).epsilon(1e-12));

  // C2 = -1 makes the denominator vanish on the same read.
  CHECK_THROWS_AS(variant_shift(crafted, 10, VariantShiftConfig{0.0, -1.0}), Error);
}

TEST_CASE("averaged variant is the mean over the window") {
  OrderedSample os = seeded_pareto(500, 1.0, 1.0, 3, 1);
  const double v1 = cadena_basic(os, 1);
  const double v2 = cadena_basic(os, 2);
  CHECK(variant_average(os, VariantAverageConfig{1, 2}) ==
        doctest::Approx((v1 + v2) / 2.0).epsilon(1e-15));

  OrderedSample grid = pareto_quantile_grid(100, 2.0);
  CHECK(variant_average(grid, VariantAverageConfig{3, 4}) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(variant_average(os, VariantAverageConfig{5, 5}), Error);
  CHECK_THROWS_AS(variant_average(os, VariantAverageConfig{0, 3}), Error);
  CHECK_THROWS_AS(variant_average(os, VariantAverageConfig{3, 500}), Error);
}

TEST_CASE("averaged variant names the degenerate k") {
  OrderedSample with_one = OrderedSample::sort_from(RawSample({0.5, 1.0, 2.0, 4.0}));
  try {
    variant_average(with_one, VariantAverageConfig{2, 3});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
    CHECK(std::string(e.what()).find("k = 3") != std::string::npos);
  }
}

TEST_CASE("averaged variant Monte Carlo concentration") {
  int hits = 0;
  for (std::uint64_t r = 0; r < 200; ++r) {
    OrderedSample os = seeded_pareto(100000, 1.0, 1.0, 20240602, r);
    const double est = variant_average(os, VariantAverageConfig{300, 330});
    if (est >= 0.8 && est <= 1.2) ++hits;
  }
  CHECK(hits >= 190);
}

TEST_CASE("Hill estimator closed form on a geometric sample") {
  // Data {e^1, ..., e^n}: the mean log-excess over the (k+1)-th largest
  // is ((n) + ... + (n-k+1))/k - (n-k) = (k+1)/2.
  std::vector<double> values;
  for (int i = 1; i <= 200; ++i) values.push_back(std::exp(static_cast<double>(i)));
  OrderedSample os = OrderedSample::sort_from(RawSample(values));
  for (std::int64_t k : {1, 10, 100}) {
    CHECK(hill(os, k) ==
          doctest::Approx((static_cast<double>(k) + 1.0) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("Hill estimator basics") {
  OrderedSample equal = OrderedSample::sort_from(RawSample({7.0, 7.0, 7.0, 7.0}));
  CHECK(hill(equal, 2) == 0.0);

  OrderedSample pair = OrderedSample::sort_from(RawSample({2.0, 8.0}));
  CHECK(hill(pair, 1) == doctest::Approx(std::log(8.0) - std::log(2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(hill(pair, 2), Error);
}

TEST_CASE("Hill is scale invariant; the log-ratio estimator is not") {
  OrderedSample os = seeded_pareto(1000, 1.0, 1.0, 31337, 2);
  const double base = hill(os, 50);
  for (double lambda : {1e-3, 1e3}) {
    std::vector<double> scaled;
    for (double v : os.values()) scaled.push_back(lambda * v);
    OrderedSample scaled_os = OrderedSample::sort_from(RawSample(scaled));
    CHECK(hill(scaled_os, 50) == doctest::Approx(base).epsilon(1e-10));
  }

  // Witness for the contrast: scaling the exact grid by 10 moves the
  // log-ratio estimate away from alpha.
  OrderedSample grid = pareto_quantile_grid(100, 2.0);
  std::vector<double> scaled;
  for (double v : grid.values()) scaled.push_back(10.0 * v);
  OrderedSample scaled_grid = OrderedSample::sort_from(RawSample(scaled));
  CHECK(std::abs(cadena_basic(scaled_grid, 4) - 2.0) > 0.5);
}

TEST_CASE("first log-excess moment is the Hill estimator bit for bit") {
  OrderedSample os = seeded_pareto(700, 0.7, 1.0, 5, 9);
  for (std::int64_t k : {1, 3, 50, 699}) {
    CHECK(moment_stat(os, k, 1) == hill(os, k));
  }
  CHECK_THROWS_AS(moment_stat(os, 5, 3), Error);
}

TEST_CASE("second moment hand value on {1, e, e^2}") {
  OrderedSample os =
      OrderedSample::sort_from(RawSample({1.0, std::exp(1.0), std::exp(2.0)}));
  // Log-excesses over the smallest are {2, 1}; second moment (4+1)/2.
  CHECK(moment_stat(os, 2, 2) == doctest::Approx(2.5).epsilon(1e-12));
  OrderedSample equal = OrderedSample::sort_from(RawSample({3.0, 3.0, 3.0}));
  CHECK(moment_stat(equal, 2, 2) == 0.0);
}

TEST_CASE("moment estimator hand value and degeneracies") {
  OrderedSample os =
      OrderedSample::sort_from(RawSample({1.0, std::exp(1.0), std::exp(2.0)}));
  // M1 = 1.5, M2 = 2.5: 1.5 + 1 - 0.5/(1 - 2.25/2.5) = -2.5.
  CHECK(dedh_moment(os, 2) == doctest::Approx(-2.5).epsilon(1e-10));

  OrderedSample equal = OrderedSample::sort_from(RawSample({3.0, 3.0, 3.0}));
  CHECK_THROWS_AS(dedh_moment(equal, 2), Error);

  // A single term always has M1^2 = M2.
  OrderedSample pair = OrderedSample::sort_from(RawSample({2.0, 8.0}));
  try {
    dedh_moment(pair, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateMoments);
  }
}

TEST_CASE("series evaluation over a grid") {
  OrderedSample grid = pareto_quantile_grid(100, 2.0);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::CadenaBasic;
  EstimateSeries series = estimate_series(grid, spec, KGrid::full(100));
  CHECK(series.points.size() == 99);
  CHECK(series.estimator_tag == "cadena");
  for (const auto& point : series.points) {
    REQUIRE(point.value.has_value());
    CHECK(*point.value == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("series marks degeneracies as undefined but keeps the k") {
  // Top three values are 1.0: Hill over k <= 2 is zero, so the
  // reciprocal is undefined there; the log-ratio form is undefined at
  // k = 3 (reads 1.0).
  OrderedSample os = OrderedSample::sort_from(RawSample({0.3, 0.5, 1.0, 1.0, 1.0}));
  EstimatorSpec recip;
  recip.kind = EstimatorKind::HillReciprocal;
  EstimateSeries series = estimate_series(os, recip, KGrid::full(5));
  CHECK(series.points.size() == 4);
  CHECK(!series.points[0].value.has_value());
  CHECK(series.points[0].k == 1);
  CHECK(!series.points[1].value.has_value());
  CHECK(series.points[3].value.has_value());

  EstimatorSpec basic;
  basic.kind = EstimatorKind::CadenaBasic;
  EstimateSeries basic_series = estimate_series(os, basic, KGrid::full(5));
  CHECK(!basic_series.points[2].value.has_value());  // k = 3 reads 1.0
  CHECK(basic_series.points[2].k == 3);
}

TEST_CASE("series for the scale-corrected estimator crosses zero at k = n*C") {
  OrderedSample os = seeded_pareto(1000, 1.0, 0.1, 4242, 0);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::CadenaScaled;
  spec.scale_c = 0.1;
  EstimateSeries series = estimate_series(os, spec, KGrid::plot_default(1000, 0.1));
  bool found = false;
  for (const auto& point : series.points) {
    if (point.k == 100) {
      found = true;
      REQUIRE(point.value.has_value());
      CHECK(*point.value == 0.0);
    }
  }
  CHECK(found);
}

TEST_CASE("averaged-variant series slides the window and truncates at the top") {
  OrderedSample os = seeded_pareto(100, 1.0, 1.0, 8, 8);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::VariantAverage;
  spec.average_window = 10;
  EstimateSeries series = estimate_series(os, spec, KGrid::full(100));
  CHECK(series.points.size() == 99);
  // k + window <= n-1 = 99 required: defined up to k = 89.
  CHECK(series.points[88].value.has_value());
  CHECK(!series.points[89].value.has_value());
  const double direct = variant_average(os, VariantAverageConfig{5, 15});
  CHECK(*series.points[4].value == direct);
}

TEST_CASE("series evaluation is deterministic") {
  OrderedSample os = seeded_pareto(300, 1.2, 1.0, 13, 4);
  EstimatorSpec spec;
  spec.kind = EstimatorKind::Moment;
  EstimateSeries a = estimate_series(os, spec, KGrid::plot_default(300, 1.0));
  EstimateSeries b = estimate_series(os, spec, KGrid::plot_default(300, 1.0));
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].value == b.points[i].value);
  }
}

TEST_CASE("estimator tags round-trip") {
  for (const char* tag : {"cadena", "cadena-scaled", "shift", "average", "hill", "hill-recip",
                          "moment", "moment-recip"}) {
    auto kind = EstimatorSpec::kind_from_tag(tag);
    REQUIRE(kind.has_value());
    EstimatorSpec spec;
    spec.kind = *kind;
    CHECK(spec.tag() == tag);
  }
  CHECK(!EstimatorSpec::kind_from_tag("pickands").has_value());
}
