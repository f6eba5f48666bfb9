#ifndef TAILIX_SAMPLE_HPP
#define TAILIX_SAMPLE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tailix/errors.hpp"

namespace tailix {

/**
 * A raw sample of strictly positive observations (e.g. losses in DKK
 * millions). Construction validates every value; NaN, infinities and
 * non-positive entries are rejected.
 */
class RawSample {
 public:
  explicit RawSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

/**
 * An ascending-sorted sample. Order statistics are 1-indexed: the i-th
 * order statistic is the i-th smallest observation. Immutable once built,
 * so concurrent reads are safe.
 */
class OrderedSample {
 public:
  // Sorts a raw sample (duplicates preserved; multiset equality with the
  // source is guaranteed). Requires at least two observations.
  static OrderedSample sort_from(const RawSample& raw);

  // Wraps data that is already non-decreasing and positive.
  static OrderedSample from_sorted(std::vector<double> sorted);

  std::size_t size() const noexcept { return sorted_.size(); }
  std::span<const double> values() const noexcept { return sorted_; }

  // The i-th smallest observation, 1 <= i <= n.
  double order_statistic(std::size_t i) const;

  // The k-th largest observation, 1 <= k <= n.
  double kth_largest(std::size_t k) const { return order_statistic(sorted_.size() - k + 1); }

  // Empirical tail (1/n) * #{ observations > x } for x > 0. On a sample
  // with distinct values this equals k/n at the (n-k)-th order statistic.
  double empirical_tail(double x) const;

 private:
  explicit OrderedSample(std::vector<double> sorted) : sorted_(std::move(sorted)) {}

  std::vector<double> sorted_;
};

/**
 * A strictly increasing grid of k values (numbers of upper order
 * statistics), each in [1, n-1] for the sample size n it was validated
 * against.
 */
class KGrid {
 public:
  // Validates an explicit grid against the sample size n.
  static KGrid validated(std::vector<std::int64_t> ks, std::size_t n);

  // Every k from 1 to n-1.
  static KGrid full(std::size_t n);

  // The plot-oriented default: all integers up to 100, then geometric
  // spacing with ratio 1.05, always including round(n*C) when it falls in
  // [1, n-1]. Keeps the k = n*C feature visible while bounding the size.
  static KGrid plot_default(std::size_t n, double scale_c = 1.0);

  // Grid made of round(f*n) for each fraction f.
  static KGrid from_fractions(const std::vector<double>& fractions, std::size_t n);

  const std::vector<std::int64_t>& ks() const noexcept { return ks_; }
  std::size_t size() const noexcept { return ks_.size(); }

 private:
  explicit KGrid(std::vector<std::int64_t> ks) : ks_(std::move(ks)) {}

  std::vector<std::int64_t> ks_;
};

}  // namespace tailix

#endif  // TAILIX_SAMPLE_HPP
