#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walters/numerics.hpp"
#include "walters/potential.hpp"
#include "walters/pressure.hpp"

namespace walters {

/// beta(f) under the standing hypothesis beta(f) = a = c.
double beta_max(const WaltersPotential& f);

/// sup_{j>=0} g(j), g(j) = d_{q+j} + (a_{q+1}-beta) + ... + (a_{q+j}-beta) on side D,
/// (b, c) on side B. The j -> inf value is d + sum_{j>=1}(a_{q+j} - beta).
struct BranchSup {
  double value = 0.0;
  double limit_value = 0.0;
  bool attained_in_limit = false;
  /// Smallest maximizing j when attained at a finite index, otherwise the
  /// best enumerated index.
  int argmax = 0;
};

BranchSup sup_branch(const WaltersPotential& f, Side side, int q, double tol = 1e-15);

/// Outcome of the screen for a periodic orbit (0^{j0+1} 1^{j1+1})^inf
/// reaching beta(f); such an orbit breaks the zero-temperature theory.
struct MaxHypothesis {
  bool pass = true;
  int j0 = -1;
  int j1 = -1;
  double sup_d = 0.0;
  double sup_b = 0.0;
  double two_beta = 0.0;
};

MaxHypothesis check_max_hypothesis(const WaltersPotential& f);

enum class ACase { Zero, A1, A2, A3 };
const char* to_string(ACase c);
ACase a_case_from_string(const std::string& s);

struct ZeroTempConstant {
  double value = 0.0;
  ACase kase = ACase::Zero;
};

/// Right side of the equation fixing A:
///   max{supD, d + sum(a_{1+j}-beta) - y} + max{supB, b + sum(c_{1+j}-beta) - y}.
double a_equation_rhs(const WaltersPotential& f, double y);

/// A = lim (1/t) log eps_t, picked from the candidates {0, A1, A2, A3} as the
/// unique one <= 0 solving a_equation_rhs(A) = 2 beta.
ZeroTempConstant compute_A(const WaltersPotential& f);

/// a = c = 0, a_n < 0, c_n < 0, b_n = b < 0, d_n = d < 0.
bool is_nonpositive(const WaltersPotential& f);

struct NonPositiveSums {
  double sum_a = 0.0;  // sum_{j>=2} a_j
  double sum_c = 0.0;
  double b = 0.0;
  double d = 0.0;

  bool a_side_below() const { return sum_a <= b + d + sum_c; }
  bool c_side_below() const { return sum_c <= b + d + sum_a; }
};

NonPositiveSums nonpositive_sums(const WaltersPotential& f);

/// Piecewise closed form for A on non-positive potentials.
double nonpositive_A(const WaltersPotential& f);

/// Selected calibrated subaction V = lim (1/t) log h_t. V depends only on the
/// lead symbol and first run of a point.
class Subaction {
 public:
  Subaction(const WaltersPotential& f, double A, int q_cache = 64);

  double A() const noexcept { return A_; }
  double at(const PatternPoint& p) const;
  double zero_run(int q) const;
  double one_run(int q) const;
  double one_inf() const noexcept { return one_inf_; }
  /// lim_{q->inf} V(0^q 1 ...) and V(1^q 0 ...).
  double zero_run_limit() const noexcept { return zero_run_limit_; }
  double one_run_limit() const noexcept { return one_run_limit_; }

 private:
  double branch_d(int q) const;
  double branch_b(int q) const;

  WaltersPotential f_;
  double A_ = 0.0;
  double beta_ = 0.0;
  double one_inf_ = 0.0;
  double zero_run_limit_ = 0.0;
  double one_run_limit_ = 0.0;
  double max_d1_ = 0.0;
  std::vector<double> zero_runs_;
  std::vector<double> one_runs_;
};

double subaction(const WaltersPotential& f, double A, const PatternPoint& p);

using PatternFunction = std::function<double(const PatternPoint&)>;

/// max over {0^inf, 1^inf, 0^q 1, 1^q 0 : q <= q_max} of
/// |V(y) - max_{sigma x = y}(f(x) + V(x)) + beta|.
double calibration_residual(const WaltersPotential& f, const PatternFunction& V, int q_max);

enum class Selection { Delta0, Delta1, MixedOrUndetermined };
const char* to_string(Selection s);
Selection selection_from_string(const std::string& s);

struct SelectionVerdict {
  Selection verdict = Selection::MixedOrUndetermined;
  bool nonpositive = false;
  double sum_a = 0.0;  // sum_{j>=2} (a_j - a)
  double sum_c = 0.0;
  double b = 0.0;
  double d = 0.0;
  /// sum_a compared against b + d + sum_c (Delta1 when strictly below).
  double delta1_threshold = 0.0;
  /// sum_c compared against b + d + sum_a (Delta0 when strictly below).
  double delta0_threshold = 0.0;
};

SelectionVerdict select_measure(const WaltersPotential& f);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<double> t;
  std::vector<double> log_values;
  std::vector<double> scaled;     // log_value / t
  std::vector<double> residuals;  // log_value - (intercept + slope t)
};

/// Least-squares slope of log X_t against t.
SlopeFit numeric_slope(std::span<const std::pair<double, double>> points);

/// Fit of log mu_t([w]) over a t grid.
SlopeFit cylinder_rate(const WaltersPotential& f, const Word& w, std::span<const double> t_grid,
                       const PressureOptions& popts = {});

/// Fit of log eps_t over a t grid (requires a == c).
SlopeFit epsilon_rate(const WaltersPotential& f, std::span<const double> t_grid,
                      const PressureOptions& popts = {});

struct RateEstimate {
  SlopeFit fit;
  std::optional<double> target;
  /// scaled[i] - target; for eps_t this is psi(t)/t with eps_t = e^{tA + psi(t)}.
  std::vector<double> offset_from_target;
};

struct SubactionEntry {
  std::string pattern;
  double value = 0.0;
};

struct LimitReport {
  double beta = 0.0;
  double A = 0.0;
  ACase a_case = ACase::Zero;
  std::optional<double> A_nonpositive;
  double a_equation_residual = 0.0;
  std::vector<SubactionEntry> V;
  double v_zero_run_limit = 0.0;
  double v_one_run_limit = 0.0;
  double calibration_residual = 0.0;
  SelectionVerdict selection;
  std::map<std::string, RateEstimate> rate_estimates;
};

/// A, V (runs up to q_cap), calibration and selection; rate estimates for
/// eps_t and each word when a t grid is supplied.
LimitReport limit_report(const WaltersPotential& f, int q_cap, std::span<const double> t_grid = {},
                         std::span<const Word> words = {}, const PressureOptions& popts = {});

}  // namespace walters
