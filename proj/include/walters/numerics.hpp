#pragma once

#include <cmath>
#include <limits>
#include <span>

#include "walters/potential.hpp"

namespace walters {

/// Positive quantity stored as its logarithm; -inf encodes zero.
class LogValue {
 public:
  constexpr LogValue() = default;
  constexpr explicit LogValue(double log_magnitude) : log_(log_magnitude) {}

  static constexpr LogValue zero() { return LogValue(-std::numeric_limits<double>::infinity()); }
  static constexpr LogValue one() { return LogValue(0.0); }
  static LogValue from_linear(double x);

  constexpr double log() const noexcept { return log_; }
  double linear() const noexcept { return std::exp(log_); }
  bool is_zero() const noexcept { return log_ == -std::numeric_limits<double>::infinity(); }

  friend LogValue operator*(LogValue x, LogValue y) { return LogValue(x.log_ + y.log_); }
  friend LogValue operator/(LogValue x, LogValue y) { return LogValue(x.log_ - y.log_); }
  friend LogValue operator+(LogValue x, LogValue y);

 private:
  double log_ = -std::numeric_limits<double>::infinity();
};

/// log(e^x + e^y)
double log_add(double x, double y);

/// log sum exp(terms); -inf for an empty range.
double log_sum_exp(std::span<const double> terms);

/// Streaming log-sum-exp with a running max shift.
class LogSumAccumulator {
 public:
  void add(double log_term);
  double result() const;

 private:
  double max_ = -std::numeric_limits<double>::infinity();
  double scaled_ = 0.0;
};

/// log sum_{j >= j1} e^{j z}; z < 0.
LogValue geometric_sum(double z, int j1 = 0);
/// log sum_{j >= j1} (j+1) e^{j z} = log e^{j1 z}(j1/(1-e^z) + 1/(1-e^z)^2); z < 0.
LogValue weighted_geometric_sum(double z, int j1 = 0);

/// P(tf) written as t*max(a,c) + excess so that tiny excesses (e^{-300}
/// and below at low temperature) survive next to an O(t) reference.
struct PressurePoint {
  double t = 1.0;
  double reference = 0.0;  // t * max(a, c)
  double excess = 0.0;     // P - t * max(a, c)

  double value() const noexcept { return reference + excess; }

  static PressurePoint from_excess(const WaltersPotential& f, double t, double excess);
  static PressurePoint from_pressure(const WaltersPotential& f, double t, double pressure);
};

/// D side: lead sequence d, running sequence a. B side: lead b, running c.
enum class Side { D, B };

inline const char* to_string(Side s) { return s == Side::D ? "D" : "B"; }

/// P - t*a (side D) or P - t*c (side B).
double side_gap(const WaltersPotential& f, Side side, const PressurePoint& p);

struct SeriesOptions {
  /// Bound on the exponent correction dropped when switching to the
  /// constant-tail closed form.
  double tail_tolerance = 1e-15;
  int max_exact_terms = 1'000'000;
};

struct SeriesValue {
  LogValue value;
  /// Bound on the relative error introduced by the tail replacement.
  double truncation_bound = 0.0;
  int exact_terms = 0;
};

/// log sum_{j>=0} (j+1)^{[weighted]} exp(t*d_{q+j} + t*(a_{q+1}+...+a_{q+j}) - j*P)
/// for side D; side B uses (b, c). The j = 0 term is exp(t*d_q).
SeriesValue pattern_series(const WaltersPotential& f, Side side, int q, const PressurePoint& p,
                           bool weighted, const SeriesOptions& opts = {});

}  // namespace walters
