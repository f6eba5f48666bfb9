#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "tailix/sampling.hpp"
#include "tailix/stats.hpp"

using namespace tailix;

TEST_CASE("uniform streams are deterministic per (seed, stream)") {
  RngStream a(123, 9);
  RngStream b(123, 9);
  const auto ua = a.uniforms(64);
  const auto ub = b.uniforms(64);
  CHECK(ua == ub);

  RngStream c(123, 10);
  CHECK(c.next_uniform01() != ua[0]);

  RngStream d(124, 9);
  CHECK(d.next_uniform01() != ua[0]);
}

TEST_CASE("uniform draws stay strictly inside (0,1)") {
  RngStream stream(77, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = stream.next_uniform01();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform mean matches a CLT bound") {
  RngStream stream(2024, 0);
  double sum = 0.0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) sum += stream.next_uniform01();
  CHECK(std::abs(sum / n - 0.5) <= 0.002);  // 3/sqrt(12 n) ~ 0.00087
}

TEST_CASE("pareto inverse cdf boundary, growth and roundtrip") {
  const ParetoModel m24{2.0, 4.0};
  CHECK(pareto_inverse_cdf(0.0, m24) == doctest::Approx(2.0).epsilon(1e-15));

  const ParetoModel m11{1.0, 1.0};
  CHECK(pareto_inverse_cdf(0.99, m11) == doctest::Approx(100.0).epsilon(1e-12));

  double prev = 0.0;
  for (double u : {0.0, 0.1, 0.5, 0.9, 0.999}) {
    const double x = pareto_inverse_cdf(u, m24);
    CHECK(x > prev);
    prev = x;
  }

  for (const ParetoModel& model : {ParetoModel{0.5, 2.0}, ParetoModel{1.0, 1.0},
                                   ParetoModel{1.5, 0.1}}) {
    for (double u : {0.0, 0.5, 0.9, 0.999}) {
      const double x = pareto_inverse_cdf(u, model);
      const double f = 1.0 - model.C * std::pow(x, -model.alpha);
      CHECK(std::abs(f - u) <= 1e-12);
    }
  }

  CHECK_THROWS_AS(pareto_inverse_cdf(1.0, m11), Error);
  CHECK_THROWS_AS(pareto_inverse_cdf(-0.1, m11), Error);
}

TEST_CASE("pareto sampler respects the support and the tail") {
  RngStream stream(99, 1);
  const ParetoModel model{1.0, 1.0};
  RawSample sample = sample_pareto(100000, model, stream);
  const double bound = model.support_bound();
  double min_v = sample.values()[0];
  int above10 = 0;
  for (double v : sample.values()) {
    min_v = std::min(min_v, v);
    if (v > 10.0) ++above10;
  }
  CHECK(min_v >= bound);
  // True tail at 10 is 0.1; binomial se ~ 0.00095.
  CHECK(std::abs(above10 / 100000.0 - 0.1) <= 0.01);

  RngStream again(99, 1);
  RawSample replay = sample_pareto(100000, model, again);
  CHECK(std::equal(sample.values().begin(), sample.values().end(), replay.values().begin()));
}

TEST_CASE("hall model with zero perturbation reduces to pareto bitwise") {
  const HallTailModel model(1.5, 2.0, 1.0, 0.0);
  RngStream a(7, 3);
  RngStream b(7, 3);
  RawSample hall = sample_hall(5000, model, a);
  RawSample pareto = sample_pareto(5000, ParetoModel{1.5, 2.0}, b);
  CHECK(std::equal(hall.values().begin(), hall.values().end(), pareto.values().begin()));
}

TEST_CASE("hall survival matches the closed formula") {
  const HallTailModel model(1.0, 1.0, 1.0, 0.5);
  // Perturbation exponent carries the little-o margin: 0.5 * 2^(-1.1).
  const double expected = 0.5 * (1.0 + 0.5 * std::pow(2.0, -1.1));
  CHECK(model.survival(2.0) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("hall numerical inverse roundtrips the survival function") {
  const HallTailModel model(1.0, 1.0, 1.0, 0.5);
  for (double u : {1e-6, 0.1, 0.5, 0.9, 0.999999}) {
    const double t = 1.0 - u;
    const double x = model.inverse_survival(t);
    CHECK(std::abs(model.survival(x) - t) <= 1e-10);
  }

  const HallTailModel negative(1.5, 2.0, 2.0, -0.3);
  for (double t : {0.9, 0.5, 0.01, 1e-8}) {
    const double x = negative.inverse_survival(t);
    CHECK(std::abs(negative.survival(x) - t) <= 1e-10);
  }
}

TEST_CASE("hall model rejects perturbations that break the tail") {
  CHECK_THROWS_AS(HallTailModel(1.0, 1.0, 1.0, -0.9), Error);
  try {
    HallTailModel(1.0, 1.0, 1.0, -0.9);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotoneTail);
  }
}

TEST_CASE("hall sampler stays above its support and is deterministic") {
  const HallTailModel model(1.0, 1.0, 1.0, 0.5);
  RngStream a(21, 4);
  RawSample sample = sample_hall(2000, model, a);
  for (double v : sample.values()) CHECK(v >= model.support_bound() * (1.0 - 1e-12));

  RngStream b(21, 4);
  RawSample replay = sample_hall(2000, model, b);
  CHECK(std::equal(sample.values().begin(), sample.values().end(), replay.values().begin()));
}

TEST_CASE("exponential inverse and sampler") {
  CHECK(exponential_inverse(1.0 - std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(exponential_inverse(0.0) == 0.0);

  RngStream stream(314, 0);
  RawSample sample = sample_exponential(1000000, stream);
  double sum = 0.0;
  for (double v : sample.values()) sum += v;
  CHECK(std::abs(sum / 1e6 - 1.0) <= 0.01);  // 3/sqrt(1e6) = 0.003

  RngStream replay_stream(314, 0);
  RngStream manual(314, 0);
  RawSample replay = sample_exponential(4, replay_stream);
  for (int i = 0; i < 4; ++i) {
    CHECK(replay.values()[i] == -std::log(1.0 - manual.next_uniform01()));
  }
}

TEST_CASE("Renyi order statistics are increasing with S1 = E/n") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 99ull, 12345ull}) {
    RngStream stream(seed, 0);
    OrderedSample os = renyi_exponential_order_stats(100, stream);
    for (std::size_t i = 1; i < os.size(); ++i) {
      CHECK(os.values()[i] > os.values()[i - 1]);
    }
    RngStream manual(seed, 0);
    const double e1 = -std::log(1.0 - manual.next_uniform01());
    CHECK(os.values()[0] == e1 / 100.0);
  }
}

TEST_CASE("Renyi construction matches directly sorted exponentials in distribution") {
  // Two-sample KS on the (n-k)-th order statistic across replications
  // with disjoint stream ranges; 1% critical value for 400 vs 400 is
  // 1.628*sqrt(2/400) = 0.115.
  const std::int64_t n = 200, k = 11;
  const int reps = 400;
  std::vector<double> renyi, direct;
  for (int r = 0; r < reps; ++r) {
    RngStream stream(777, static_cast<std::uint64_t>(r));
    OrderedSample os = renyi_exponential_order_stats(n, stream);
    renyi.push_back(os.order_statistic(static_cast<std::size_t>(n - k)));
  }
  for (int r = 0; r < reps; ++r) {
    RngStream stream(777, (1ull << 32) | static_cast<std::uint64_t>(r));
    OrderedSample os = OrderedSample::sort_from(sample_exponential(n, stream));
    direct.push_back(os.order_statistic(static_cast<std::size_t>(n - k)));
  }
  CHECK(ks_distance_two_sample(renyi, direct) <= 0.115);
}

TEST_CASE("floor-log inverse on hand values") {
  CHECK(floor_log_inverse(std::exp(-2.5)) == doctest::Approx(std::exp(3.0)).epsilon(1e-15));
  CHECK(floor_log_inverse(0.5) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK(floor_log_inverse(0.99) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("floor-log draws live on the grid e^m") {
  RngStream stream(11, 2);
  RawSample sample = sample_floor_log(10000, stream);
  for (double v : sample.values()) {
    const double m = std::round(std::log(v));
    CHECK(m >= 1.0);
    CHECK(v == std::exp(m));
  }
}

TEST_CASE("floor-log tail probability at e^2") {
  RngStream stream(600613, 0);
  RawSample sample = sample_floor_log(1000000, stream);
  const double threshold = std::exp(2.0);
  int above = 0;
  for (double v : sample.values()) {
    if (v > threshold) ++above;
  }
  // P(X > e^2) = e^-2 ~ 0.1353; binomial se ~ 0.00034.
  CHECK(std::abs(above / 1e6 - std::exp(-2.0)) <= 0.002);
}
