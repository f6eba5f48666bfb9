#ifndef TAILIX_SAMPLING_HPP
#define TAILIX_SAMPLING_HPP

#include <cstdint>

#include "tailix/rng.hpp"
#include "tailix/sample.hpp"

namespace tailix {

/**
 * Pareto-type tail model F(x) = 1 - C * x^(-alpha).
 *
 * The support lower bound is C^(1/alpha), the algebraic zero of F. (Some
 * write-ups state x >= C^(-alpha), which only coincides at C = 1 and makes
 * F negative for C > 1; the algebraic bound is used throughout.)
 */
struct ParetoModel {
  double alpha = 1.0;
  double C = 1.0;

  double support_bound() const;
};

/**
 * Hall-class tail C * x^(-alpha) * (1 + p(x)) with a perturbation that
 * vanishes faster than x^(-beta):
 *
 *     p(x) = perturb_coeff * x^(-beta * (1 + kLittleOMargin))
 *
 * The fixed exponent margin keeps p strictly inside o(x^(-beta));
 * perturb_coeff = 0 selects the exact Pareto tail. Construction derives
 * the support bound (where the survival function reaches 1) and verifies
 * on a diagnostic grid that the survival function is strictly decreasing
 * there, throwing NonMonotoneTail otherwise.
 */
class HallTailModel {
 public:
  static constexpr double kLittleOMargin = 0.1;

  HallTailModel(double alpha, double C, double beta, double perturb_coeff = 0.0);

  double alpha() const noexcept { return alpha_; }
  double C() const noexcept { return c_; }
  double beta() const noexcept { return beta_; }
  double perturb_coeff() const noexcept { return coeff_; }
  bool is_exact_pareto() const noexcept { return coeff_ == 0.0; }

  double support_bound() const noexcept { return support_; }

  // Survival function C * x^(-alpha) * (1 + p(x)) for x >= support_bound().
  double survival(double x) const;

  // Solves survival(x) = t for t in (0, 1]. Closed form when the
  // perturbation is zero; otherwise bisection in log x to 1e-12 relative
  // tolerance.
  double inverse_survival(double t) const;

 private:
  double perturbation(double x) const;
  double survival_unclamped(double x) const;

  double alpha_;
  double c_;
  double beta_;
  double coeff_;
  double support_;
};

// Inverse CDF of the Pareto model: (C / (1-u))^(1/alpha) for 0 <= u < 1.
// Strictly increasing in u; u = 0 gives the support bound.
double pareto_inverse_cdf(double u, const ParetoModel& model);

// Inverse transform for the standard exponential, -log(1-u).
double exponential_inverse(double u);

// Inverse transform for the tail e^(-floor(log x)): returns e^m with
// m = ceil(-log u), so P(X > e^m) = e^(-m).
double floor_log_inverse(double u);

// n i.i.d. draws by inverse transform; every value >= C^(1/alpha).
RawSample sample_pareto(std::int64_t n, const ParetoModel& model, RngStream& stream);

// n i.i.d. draws from a Hall-class model. With a zero perturbation the
// output is bitwise identical to sample_pareto on the same stream.
RawSample sample_hall(std::int64_t n, const HallTailModel& model, RngStream& stream);

// n i.i.d. standard exponential draws.
RawSample sample_exponential(std::int64_t n, RngStream& stream);

/**
 * Exponential order statistics via Renyi's representation: the partial
 * sums S_i = sum_{j=1}^{i} E_j / (n - j + 1) of independent standard
 * exponentials (consumed in draw order, so S_1 is the first draw divided
 * by n). The vector (S_1 <= ... <= S_n) is distributed as the sorted
 * values of n i.i.d. standard exponentials.
 */
OrderedSample renyi_exponential_order_stats(std::int64_t n, RngStream& stream);

// n i.i.d. draws whose survival function is e^(-floor(log x)) on the grid
// x = e^m; all outputs lie in {e^1, e^2, ...}.
RawSample sample_floor_log(std::int64_t n, RngStream& stream);

}  // namespace tailix

#endif  // TAILIX_SAMPLING_HPP
