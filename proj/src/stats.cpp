#include "tailix/stats.hpp"

#include <algorithm>
#include <cmath>

#include "tailix/errors.hpp"

namespace tailix {

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

double ks_distance(std::span<const double> samples, double location, double scale) {
  if (samples.empty()) raise(ErrorCode::InvalidArgument, "KS distance needs a nonempty sample");
  if (!(scale > 0.0)) raise(ErrorCode::InvalidArgument, "KS scale must be positive");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf((sorted[i] - location) / scale);
    const double below = f - static_cast<double>(i) / m;
    const double above = static_cast<double>(i + 1) / m - f;
    d = std::max({d, below, above});
  }
  return d;
}

double ks_distance_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    raise(ErrorCode::InvalidArgument, "two-sample KS needs nonempty samples");
  }
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double inv_na = 1.0 / static_cast<double>(sa.size());
  const double inv_nb = 1.0 / static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double diff = 0.0, d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double x = std::min(sa[ia], sb[ib]);
    while (ia < sa.size() && sa[ia] == x) {
      diff -= inv_na;
      ++ia;
    }
    while (ib < sb.size() && sb[ib] == x) {
      diff += inv_nb;
      ++ib;
    }
    d = std::max(d, std::abs(diff));
  }
  return d;
}

double quantile(std::vector<double> samples, double p) {
  if (samples.empty()) raise(ErrorCode::InvalidArgument, "quantile of an empty sample");
  if (!(p >= 0.0) || p > 1.0) raise(ErrorCode::InvalidArgument, "quantile level outside [0, 1]");
  std::sort(samples.begin(), samples.end());
  const double h = p * static_cast<double>(samples.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= samples.size()) return samples.back();
  const double w = h - static_cast<double>(lo);
  return samples[lo] + w * (samples[lo + 1] - samples[lo]);
}

double mean(std::span<const double> xs) {
  if (xs.empty()) raise(ErrorCode::InvalidArgument, "mean of an empty sample");
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) raise(ErrorCode::InvalidArgument, "variance needs at least two values");
  const double m = mean(xs);
  double sum = 0.0;
  for (double x : xs) sum += (x - m) * (x - m);
  return sum / static_cast<double>(xs.size() - 1);
}

}  // namespace tailix
