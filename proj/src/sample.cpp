#include "tailix/sample.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tailix {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DegenerateMoments: return "DegenerateMoments";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NonMonotoneTail: return "NonMonotoneTail";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::TooManyDegenerate: return "TooManyDegenerate";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void check_positive(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v <= 0.0) {
      raise(ErrorCode::NonPositiveValue,
            "observation " + std::to_string(i + 1) + " is not a positive finite number (" +
                std::to_string(v) + ")");
    }
  }
}

}  // namespace

RawSample::RawSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) {
    raise(ErrorCode::InvalidArgument, "sample must contain at least one observation");
  }
  check_positive(values_);
}

OrderedSample OrderedSample::sort_from(const RawSample& raw) {
  if (raw.size() < 2) {
    raise(ErrorCode::InvalidArgument, "ordered sample needs at least two observations");
  }
  std::vector<double> sorted(raw.values().begin(), raw.values().end());
  std::sort(sorted.begin(), sorted.end());
  return OrderedSample(std::move(sorted));
}

OrderedSample OrderedSample::from_sorted(std::vector<double> sorted) {
  if (sorted.size() < 2) {
    raise(ErrorCode::InvalidArgument, "ordered sample needs at least two observations");
  }
  check_positive(sorted);
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    raise(ErrorCode::InvalidArgument, "values are not in ascending order");
  }
  return OrderedSample(std::move(sorted));
}

double OrderedSample::order_statistic(std::size_t i) const {
  if (i < 1 || i > sorted_.size()) {
    raise(ErrorCode::IndexOutOfRange,
          "order statistic index " + std::to_string(i) + " outside [1, " +
              std::to_string(sorted_.size()) + "]");
  }
  return sorted_[i - 1];
}

double OrderedSample::empirical_tail(double x) const {
  auto above = sorted_.end() - std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(above) / static_cast<double>(sorted_.size());
}

KGrid KGrid::validated(std::vector<std::int64_t> ks, std::size_t n) {
  if (ks.empty()) {
    raise(ErrorCode::InvalidArgument, "k grid is empty");
  }
  std::int64_t prev = 0;
  for (std::int64_t k : ks) {
    if (k <= prev) {
      raise(ErrorCode::InvalidArgument, "k grid must be strictly increasing");
    }
    if (k < 1 || k > static_cast<std::int64_t>(n) - 1) {
      raise(ErrorCode::KOutOfRange,
            "k = " + std::to_string(k) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    prev = k;
  }
  return KGrid(std::move(ks));
}

KGrid KGrid::full(std::size_t n) {
  std::vector<std::int64_t> ks;
  ks.reserve(n - 1);
  for (std::int64_t k = 1; k <= static_cast<std::int64_t>(n) - 1; ++k) ks.push_back(k);
  return validated(std::move(ks), n);
}

KGrid KGrid::plot_default(std::size_t n, double scale_c) {
  const auto k_max = static_cast<std::int64_t>(n) - 1;
  std::set<std::int64_t> ks;
  for (std::int64_t k = 1; k <= std::min<std::int64_t>(100, k_max); ++k) ks.insert(k);
  double g = 100.0;
  while (true) {
    g *= 1.05;
    const auto k = static_cast<std::int64_t>(std::llround(g));
    if (k > k_max) break;
    ks.insert(k);
  }
  const auto feature_k = static_cast<std::int64_t>(std::llround(static_cast<double>(n) * scale_c));
  if (feature_k >= 1 && feature_k <= k_max) ks.insert(feature_k);
  return validated(std::vector<std::int64_t>(ks.begin(), ks.end()), n);
}

KGrid KGrid::from_fractions(const std::vector<double>& fractions, std::size_t n) {
  std::set<std::int64_t> ks;
  for (double f : fractions) {
    const auto k = static_cast<std::int64_t>(std::llround(f * static_cast<double>(n)));
    ks.insert(std::clamp<std::int64_t>(k, 1, static_cast<std::int64_t>(n) - 1));
  }
  return validated(std::vector<std::int64_t>(ks.begin(), ks.end()), n);
}

}  // namespace tailix
