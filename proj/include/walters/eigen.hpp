#pragma once

#include <optional>
#include <vector>

#include "walters/numerics.hpp"
#include "walters/potential.hpp"
#include "walters/pressure.hpp"

namespace walters {

struct EigenOptions {
  /// alpha_q and beta_q are precomputed for q <= q_max.
  int q_max = 64;
  SeriesOptions series{};
};

/// Leading eigenfunction h_t of L_{tf}, normalized by h_t(0^inf) = 1.
/// h_t depends only on the first run of x:
///   h(0^inf) = 1, h(1^inf) = beta_inf, h(0^q 1 ...) = alpha_q, h(1^q 0 ...) = beta_q.
/// Immutable once built; safe to share across threads.
class EigenValues {
 public:
  EigenValues(WaltersPotential f, PressureSolution pressure, EigenOptions opts = {});

  const WaltersPotential& potential() const noexcept { return f_; }
  const PressureSolution& pressure() const noexcept { return pressure_; }
  double t() const noexcept { return pressure_.t; }

  LogValue beta_inf() const noexcept { return beta_inf_; }
  LogValue alpha(int q) const;
  LogValue beta(int q) const;

  /// Series D_q = sum_j e^{t d_{q+j} + t(a_{q+1}+...+a_{q+j}) - jP} (cached for q <= q_max).
  LogValue d_series(int q) const;
  LogValue b_series(int q) const;

  /// h on a pattern class (only the lead symbol and first run matter).
  LogValue at(const PatternPoint& p) const;

 private:
  LogValue alpha_from_series(LogValue series) const;
  LogValue beta_from_series(LogValue series) const;

  WaltersPotential f_;
  PressureSolution pressure_;
  EigenOptions opts_;
  double log_alpha_factor_ = 0.0;  // log((e^P - e^{ta}) / (e^{td} e^P))
  double log_beta_factor_ = 0.0;   // log(beta_inf (e^P - e^{tc}) / (e^{tb} e^P))
  LogValue beta_inf_;
  std::vector<LogValue> d_series_;  // index q-1
  std::vector<LogValue> b_series_;
};

EigenValues h_values(const WaltersPotential& f, double t, const PressureOptions& popts = {},
                     const EigenOptions& eopts = {});

/// h_t on [w] if the first run of w is terminated (w starts 0^p1 or 1^p0).
std::optional<LogValue> h_on_word(const EigenValues& h, const Word& w);

/// |L h(x) - e^P h(x)| / (e^P h(x)) at a pattern point x with a pinned first
/// run (0^inf, 1^inf, 0^q 1 ..., 1^q 0 ...).
double eigen_residual(const EigenValues& h, const PatternPoint& p);

/// Largest eigen_residual over 0^inf, 1^inf, 0^q1, 1^q0 for q <= q_max.
double max_eigen_residual(const EigenValues& h, int q_max);

}  // namespace walters
