#ifndef TAILIX_STATS_HPP
#define TAILIX_STATS_HPP

#include <span>
#include <vector>

namespace tailix {

// Standard normal CDF, Phi(z) = erfc(-z / sqrt(2)) / 2. Absolute error is
// that of the C library erfc (a few ulp), far below 1e-7.
double normal_cdf(double z);

// One-sample Kolmogorov-Smirnov distance between the empirical CDF of the
// samples and Normal(location, scale), using the two-sided step evaluation
// at the sorted sample points.
double ks_distance(std::span<const double> samples, double location, double scale);

// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b| (ties advanced
// jointly).
double ks_distance_two_sample(std::span<const double> a, std::span<const double> b);

// Linear-interpolation quantile of a sample (R type 7); p in [0, 1].
double quantile(std::vector<double> samples, double p);

double mean(std::span<const double> xs);

// Unbiased sample variance (n-1 denominator).
double variance(std::span<const double> xs);

}  // namespace tailix

#endif  // TAILIX_STATS_HPP
