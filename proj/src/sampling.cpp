#include "tailix/sampling.hpp"

#include <cmath>
#include <string>

namespace tailix {

namespace {

void check_model(double alpha, double C) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    raise(ErrorCode::InvalidArgument, "tail index alpha must be positive and finite");
  }
  if (!(C > 0.0) || !std::isfinite(C)) {
    raise(ErrorCode::InvalidArgument, "scale constant C must be positive and finite");
  }
}

void check_u(double u) {
  if (!(u >= 0.0) || u >= 1.0) {
    raise(ErrorCode::DomainError, "u must lie in [0, 1), got " + std::to_string(u));
  }
}

}  // namespace

double ParetoModel::support_bound() const { return std::pow(C, 1.0 / alpha); }

double pareto_inverse_cdf(double u, const ParetoModel& model) {
  check_model(model.alpha, model.C);
  check_u(u);
  return std::pow(model.C / (1.0 - u), 1.0 / model.alpha);
}

double exponential_inverse(double u) {
  check_u(u);
  return -std::log(1.0 - u);
}

double floor_log_inverse(double u) {
  if (!(u > 0.0) || u >= 1.0) {
    raise(ErrorCode::DomainError, "u must lie in (0, 1), got " + std::to_string(u));
  }
  return std::exp(std::ceil(-std::log(u)));
}

HallTailModel::HallTailModel(double alpha, double C, double beta, double perturb_coeff)
    : alpha_(alpha), c_(C), beta_(beta), coeff_(perturb_coeff), support_(0.0) {
  check_model(alpha_, c_);
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    raise(ErrorCode::InvalidArgument, "beta must be positive and finite");
  }
  if (!std::isfinite(coeff_)) {
    raise(ErrorCode::InvalidArgument, "perturbation coefficient must be finite");
  }

  const double pareto_bound = std::pow(c_, 1.0 / alpha_);
  if (coeff_ == 0.0) {
    support_ = pareto_bound;
    return;
  }

  const double exponent = beta_ * (1.0 + kLittleOMargin);
  double lo;
  if (coeff_ > 0.0) {
    // survival > pareto tail everywhere, so the crossing of 1 sits at or
    // above the pareto bound and the function is decreasing throughout.
    lo = pareto_bound;
  } else {
    // With a negative coefficient the survival rises from zero, peaks at
    // x_stat and decays after it; a usable tail needs the peak to reach 1.
    const double x_stat =
        std::pow(-coeff_ * (alpha_ + exponent) / alpha_, 1.0 / exponent);
    if (!(survival_unclamped(x_stat) >= 1.0)) {
      raise(ErrorCode::NonMonotoneTail,
            "perturbation coefficient " + std::to_string(coeff_) +
                " leaves the survival function below 1 everywhere; no valid support");
    }
    lo = x_stat;
  }

  // Bracket the crossing survival(x) = 1 from lo, then bisect in log x.
  double hi = lo;
  int guard = 0;
  while (survival_unclamped(hi) >= 1.0) {
    hi *= 2.0;
    if (++guard > 4000) {
      raise(ErrorCode::NonMonotoneTail, "survival function never drops below 1");
    }
  }
  double ylo = std::log(lo), yhi = std::log(hi);
  for (int it = 0; it < 200 && (yhi - ylo) > 1e-13; ++it) {
    const double ymid = 0.5 * (ylo + yhi);
    if (survival_unclamped(std::exp(ymid)) >= 1.0) {
      ylo = ymid;
    } else {
      yhi = ymid;
    }
  }
  support_ = std::exp(yhi);

  // Diagnostic grid check: strictly decreasing and inside (0, 1] over the
  // working range of the tail.
  const int points = 256;
  double prev = survival(support_);
  if (!(prev > 0.0) || prev > 1.0 + 1e-12) {
    raise(ErrorCode::NonMonotoneTail, "survival function invalid at the support bound");
  }
  for (int i = 1; i <= points; ++i) {
    const double x = support_ * std::pow(1e8, static_cast<double>(i) / points);
    const double s = survival(x);
    if (!(s > 0.0) || s >= prev) {
      raise(ErrorCode::NonMonotoneTail,
            "survival function is not strictly decreasing near x = " + std::to_string(x));
    }
    prev = s;
  }
}

double HallTailModel::perturbation(double x) const {
  if (coeff_ == 0.0) return 0.0;
  return coeff_ * std::pow(x, -beta_ * (1.0 + kLittleOMargin));
}

double HallTailModel::survival(double x) const {
  const double s = survival_unclamped(x);
  return s > 1.0 ? 1.0 : s;
}

double HallTailModel::survival_unclamped(double x) const {
  return c_ * std::pow(x, -alpha_) * (1.0 + perturbation(x));
}

double HallTailModel::inverse_survival(double t) const {
  if (!(t > 0.0) || t > 1.0) {
    raise(ErrorCode::DomainError, "survival level must lie in (0, 1], got " + std::to_string(t));
  }
  if (coeff_ == 0.0) {
    // Same expression as pareto_inverse_cdf with u = 1 - t, so zero
    // perturbation reproduces the Pareto sampler bitwise.
    return std::pow(c_ / t, 1.0 / alpha_);
  }
  if (t == 1.0) return support_;

  double lo = support_, hi = support_;
  int guard = 0;
  while (survival(hi) >= t) {
    hi *= 2.0;
    if (++guard > 4000) {
      raise(ErrorCode::DomainError, "failed to bracket the requested survival level");
    }
  }
  double ylo = std::log(lo), yhi = std::log(hi);
  // Bisection in log x to 1e-12 relative tolerance on x.
  for (int it = 0; it < 200 && (yhi - ylo) > 1e-12; ++it) {
    const double ymid = 0.5 * (ylo + yhi);
    if (survival(std::exp(ymid)) >= t) {
      ylo = ymid;
    } else {
      yhi = ymid;
    }
  }
  return std::exp(0.5 * (ylo + yhi));
}

RawSample sample_pareto(std::int64_t n, const ParetoModel& model, RngStream& stream) {
  check_model(model.alpha, model.C);
  if (n < 1) raise(ErrorCode::InvalidArgument, "sample size must be at least 1");
  const double inv_alpha = 1.0 / model.alpha;
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = stream.next_uniform01();
    values.push_back(std::pow(model.C / (1.0 - u), inv_alpha));
  }
  return RawSample(std::move(values));
}

RawSample sample_hall(std::int64_t n, const HallTailModel& model, RngStream& stream) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "sample size must be at least 1");
  if (model.is_exact_pareto()) {
    return sample_pareto(n, ParetoModel{model.alpha(), model.C()}, stream);
  }
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = stream.next_uniform01();
    values.push_back(model.inverse_survival(1.0 - u));
  }
  return RawSample(std::move(values));
}

RawSample sample_exponential(std::int64_t n, RngStream& stream) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "sample size must be at least 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    values.push_back(-std::log(1.0 - stream.next_uniform01()));
  }
  return RawSample(std::move(values));
}

OrderedSample renyi_exponential_order_stats(std::int64_t n, RngStream& stream) {
  if (n < 2) raise(ErrorCode::InvalidArgument, "need at least two order statistics");
  std::vector<double> s(static_cast<std::size_t>(n));
  double acc = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    const double e = -std::log(1.0 - stream.next_uniform01());
    acc += e / static_cast<double>(n - i + 1);
    s[static_cast<std::size_t>(i - 1)] = acc;
  }
  return OrderedSample::from_sorted(std::move(s));
}

RawSample sample_floor_log(std::int64_t n, RngStream& stream) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "sample size must be at least 1");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    values.push_back(floor_log_inverse(stream.next_uniform01()));
  }
  return RawSample(std::move(values));
}

}  // namespace tailix
