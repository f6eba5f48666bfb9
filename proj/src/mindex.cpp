#include "tailix/mindex.hpp"

#include <cmath>

#include "tailix/errors.hpp"

namespace tailix {

MFunction MFunction::from_values(std::function<double(double)> u, std::string label) {
  return MFunction(std::move(u), false, std::move(label));
}

MFunction MFunction::from_log(std::function<double(double)> log_u, std::string label) {
  return MFunction(std::move(log_u), true, std::move(label));
}

double MFunction::log_u(double x) const {
  if (is_log_) {
    const double lu = fn_(x);
    if (!std::isfinite(lu)) {
      raise(ErrorCode::DomainError, "log U(" + std::to_string(x) + ") is not finite");
    }
    return lu;
  }
  const double u = fn_(x);
  if (!std::isfinite(u) || u <= 0.0) {
    raise(ErrorCode::DomainError,
          "U(" + std::to_string(x) + ") must be positive and finite, got " + std::to_string(u));
  }
  return std::log(u);
}

std::vector<double> geometric_grid(double from, double to, std::size_t count) {
  if (!(from > 0.0) || !(to > from) || count < 2) {
    raise(ErrorCode::InvalidArgument, "geometric grid needs 0 < from < to and at least 2 points");
  }
  std::vector<double> grid(count);
  const double log_from = std::log(from);
  const double step = (std::log(to) - log_from) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = std::exp(log_from + step * static_cast<double>(i));
  }
  grid.front() = from;
  grid.back() = to;
  return grid;
}

double log_log_ratio(const MFunction& f, double x) {
  if (!(x > 1.0)) {
    raise(ErrorCode::DomainError, "evaluation point must exceed 1, got " + std::to_string(x));
  }
  return f.log_u(x) / std::log(x);
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 8) {
    raise(ErrorCode::InvalidArgument, "diagnostic grid needs at least 8 points");
  }
  double prev = 1.0;
  for (double x : grid) {
    if (!(x > prev)) {
      raise(ErrorCode::DomainError, "grid must be strictly increasing with minimum above 1");
    }
    prev = x;
  }
}

// Strictly monotone (all consecutive differences share one strict sign).
bool strictly_monotone(const std::vector<double>& v, std::size_t begin) {
  bool inc = true, dec = true;
  for (std::size_t i = begin + 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) inc = false;
    if (v[i] >= v[i - 1]) dec = false;
  }
  return inc || dec;
}

}  // namespace

MIndexDiagnostic estimate_m_index(const MFunction& f, const std::vector<double>& grid,
                                  double drift_tol) {
  check_grid(grid);
  MIndexDiagnostic diag;
  diag.grid = grid;
  diag.ratios.reserve(grid.size());
  for (double x : grid) diag.ratios.push_back(log_log_ratio(f, x));

  diag.estimated_index = diag.ratios.back();
  const std::size_t tail_begin = grid.size() / 2;
  double max_dev = 0.0;
  for (std::size_t i = tail_begin; i < diag.ratios.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(diag.ratios[i] - diag.estimated_index));
  }
  diag.max_deviation_tail = max_dev;

  const double spread = std::abs(diag.ratios[tail_begin] - diag.ratios.back());
  diag.drifting = strictly_monotone(diag.ratios, tail_begin) && spread > drift_tol;
  return diag;
}

SandwichReport check_sandwich(const MFunction& f, double eta, double epsilon,
                              const std::vector<double>& grid) {
  if (!(epsilon > 0.0)) raise(ErrorCode::InvalidArgument, "epsilon must be positive");
  check_grid(grid);

  std::vector<double> upper, lower;  // log of U/x^(eta±eps)
  upper.reserve(grid.size());
  lower.reserve(grid.size());
  for (double x : grid) {
    const double lu = f.log_u(x);
    const double lx = std::log(x);
    upper.push_back(lu - (eta + epsilon) * lx);
    lower.push_back(lu - (eta - epsilon) * lx);
  }

  const std::size_t tail_begin = grid.size() / 2;
  bool upper_down = true, lower_up = true;
  for (std::size_t i = tail_begin + 1; i < grid.size(); ++i) {
    if (upper[i] >= upper[i - 1]) upper_down = false;
    if (lower[i] <= lower[i - 1]) lower_up = false;
  }

  SandwichReport report;
  report.eta = eta;
  report.epsilon = epsilon;
  report.upper_trend_to_zero = upper_down;
  report.lower_trend_to_infinity = lower_up;
  report.confirmed = upper_down && lower_up;
  report.upper_log_ratio_last = upper.back();
  report.lower_log_ratio_last = lower.back();
  return report;
}

}  // namespace tailix
