#ifndef TAILIX_MINDEX_HPP
#define TAILIX_MINDEX_HPP

#include <functional>
#include <string>
#include <vector>

namespace tailix {

/**
 * A positive function U whose log-log growth rate is to be diagnosed.
 * Either the values of U or log U directly can be supplied; the log form
 * avoids overflow for steep functions (|index| > 20 on deep grids).
 */
class MFunction {
 public:
  static MFunction from_values(std::function<double(double)> u, std::string label);
  static MFunction from_log(std::function<double(double)> log_u, std::string label);

  // log U(x); throws DomainError if U(x) <= 0 or the result is not finite.
  double log_u(double x) const;

  const std::string& label() const noexcept { return label_; }

 private:
  MFunction(std::function<double(double)> f, bool is_log, std::string label)
      : fn_(std::move(f)), is_log_(is_log), label_(std::move(label)) {}

  std::function<double(double)> fn_;
  bool is_log_;
  std::string label_;
};

// Geometric grid of `count` points from `from` to `to` inclusive.
std::vector<double> geometric_grid(double from, double to, std::size_t count);

// The pointwise diagnostic ratio log U(x) / log(x), for x > 1.
double log_log_ratio(const MFunction& f, double x);

/**
 * Finite-grid index diagnostic. A finite grid cannot certify a limit, so
 * this reports trend evidence, never a boolean membership verdict:
 *   - estimated_index is the ratio at the deepest grid point;
 *   - max_deviation_tail is the largest |ratio - estimated_index| over the
 *     top half of the grid;
 *   - drifting is set when the top-half ratios are strictly monotone and
 *     their total spread exceeds drift_tol, i.e. the sequence has not
 *     settled at the grid depth used.
 */
struct MIndexDiagnostic {
  std::vector<double> grid;
  std::vector<double> ratios;
  double estimated_index = 0.0;
  double max_deviation_tail = 0.0;
  bool drifting = false;
};

inline constexpr double kDefaultDriftTol = 0.05;

// Requires a strictly increasing grid of at least 8 points with min > 1
// (geometric spacing is the intended use).
MIndexDiagnostic estimate_m_index(const MFunction& f, const std::vector<double>& grid,
                                  double drift_tol = kDefaultDriftTol);

/**
 * Finite-grid proxy for the two-sided membership limits at a candidate
 * index eta: U(x)/x^(eta+eps) should shrink toward 0 and U(x)/x^(eta-eps)
 * should grow without bound. Trends are assessed in log space over the top
 * half of the grid.
 */
struct SandwichReport {
  double eta = 0.0;
  double epsilon = 0.0;
  bool upper_trend_to_zero = false;  // log(U/x^(eta+eps)) strictly decreasing
  bool lower_trend_to_infinity = false;  // log(U/x^(eta-eps)) strictly increasing
  bool confirmed = false;  // both trends present
  double upper_log_ratio_last = 0.0;
  double lower_log_ratio_last = 0.0;
};

SandwichReport check_sandwich(const MFunction& f, double eta, double epsilon,
                              const std::vector<double>& grid);

}  // namespace tailix

#endif  // TAILIX_MINDEX_HPP
