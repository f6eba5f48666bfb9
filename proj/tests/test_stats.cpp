#include <cmath>
#include <vector>

#include "doctest.h"
#include "tailix/stats.hpp"
#include "tailix/errors.hpp"

using namespace tailix;

namespace {

// Standard normal quantile by bisection on normal_cdf, to 1e-10. Used as
// a construction oracle for KS inputs; independent of ks_distance itself.
double normal_quantile(double p) {
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal cdf anchor values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(10.0) - 1.0) <= 1e-7);
  CHECK(normal_cdf(1.96) == doctest::Approx(0.9750021048517795).epsilon(1e-9));
  CHECK(std::abs(normal_cdf(1.96) - 0.9750021) <= 1e-7);
  for (double z : {0.3, 1.0, 2.5, 7.0}) {
    CHECK(normal_cdf(z) + normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("ks distance at plugin quantile positions") {
  const int m = 1000;
  std::vector<double> samples;
  for (int i = 1; i <= m; ++i) {
    samples.push_back(normal_quantile((i - 0.5) / m));
  }
  // By construction the empirical CDF brackets the model CDF at distance
  // 1/(2m); the 0.0005 covers quantile bisection error.
  CHECK(ks_distance(samples, 0.0, 1.0) <= 0.0005 + 1.0 / (2.0 * m));
}

TEST_CASE("ks distance of a single sample at the median") {
  std::vector<double> one{0.0};
  CHECK(ks_distance(one, 0.0, 1.0) == 0.5);
}

TEST_CASE("ks distance detects a scale mismatch") {
  // Quantile-positioned standard normal sample tested against scale 2;
  // the analytic sup of |Phi(x) - Phi(x/2)| is about 0.161.
  const int m = 4000;
  std::vector<double> samples;
  for (int i = 1; i <= m; ++i) {
    samples.push_back(normal_quantile((i - 0.5) / m));
  }
  CHECK(ks_distance(samples, 0.0, 2.0) > 0.08);
  CHECK(ks_distance(samples, 0.0, 2.0) == doctest::Approx(0.1614).epsilon(0.05));
}

TEST_CASE("ks distance input validation") {
  std::vector<double> empty;
  CHECK_THROWS_AS(ks_distance(empty, 0.0, 1.0), Error);
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(ks_distance(one, 0.0, 0.0), Error);
}

TEST_CASE("two-sample ks hand values") {
  std::vector<double> a{1.0, 2.0};
  std::vector<double> b{3.0, 4.0};
  CHECK(ks_distance_two_sample(a, b) == 1.0);

  std::vector<double> c{1.0, 3.0};
  std::vector<double> d{2.0, 4.0};
  CHECK(ks_distance_two_sample(c, d) == 0.5);

  CHECK(ks_distance_two_sample(a, a) == 0.0);

  std::vector<double> ties1{1.0, 1.0, 2.0};
  std::vector<double> ties2{1.0, 2.0, 2.0};
  CHECK(ks_distance_two_sample(ties1, ties2) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("type-7 quantiles") {
  std::vector<double> xs{10.0, 20.0, 30.0, 40.0};
  CHECK(quantile(xs, 0.0) == 10.0);
  CHECK(quantile(xs, 1.0) == 40.0);
  CHECK(quantile(xs, 0.5) == 25.0);
  CHECK(quantile(xs, 0.25) == doctest::Approx(17.5).epsilon(1e-15));

  std::vector<double> single{4.25};
  CHECK(quantile(single, 0.05) == 4.25);
  CHECK(quantile(single, 0.5) == 4.25);
  CHECK(quantile(single, 0.95) == 4.25);
}

TEST_CASE("mean and unbiased variance") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  CHECK(mean(xs) == 2.5);
  CHECK(variance(xs) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  std::vector<double> one{1.0};
  CHECK_THROWS_AS(variance(one), Error);
}
