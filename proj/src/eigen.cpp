#include "walters/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walters {

namespace {

// log(1 - e^{-x}) for x > 0
double log_one_minus_exp_neg(double x) { return std::log(-std::expm1(-x)); }

}  // namespace

EigenValues::EigenValues(WaltersPotential f, PressureSolution pressure, EigenOptions opts)
    : f_(std::move(f)), pressure_(pressure), opts_(opts) {
  const PressurePoint p = pressure_.point();
  const double t = p.t;
  const double gap_a = side_gap(f_, Side::D, p);
  const double gap_c = side_gap(f_, Side::B, p);

  d_series_.reserve(static_cast<std::size_t>(opts_.q_max));
  b_series_.reserve(static_cast<std::size_t>(opts_.q_max));
  for (int q = 1; q <= opts_.q_max; ++q) {
    d_series_.push_back(pattern_series(f_, Side::D, q, p, false, opts_.series).value);
    b_series_.push_back(pattern_series(f_, Side::B, q, p, false, opts_.series).value);
  }
  const LogValue d1 = d_series(1);

  // (e^P - e^{ta}) / (e^{td} e^P) = (1 - e^{-(P - ta)}) e^{-td}
  log_alpha_factor_ = log_one_minus_exp_neg(gap_a) - t * f_.d();
  beta_inf_ = LogValue(t * (f_.b() - f_.d()) + log_one_minus_exp_neg(gap_a) -
                       log_one_minus_exp_neg(gap_c) - pressure_.pressure + d1.log());
  log_beta_factor_ = beta_inf_.log() + log_one_minus_exp_neg(gap_c) - t * f_.b();
}

LogValue EigenValues::d_series(int q) const {
  if (q < 1) throw std::out_of_range("series index must be >= 1");
  if (q <= static_cast<int>(d_series_.size())) return d_series_[static_cast<std::size_t>(q - 1)];
  return pattern_series(f_, Side::D, q, pressure_.point(), false, opts_.series).value;
}

LogValue EigenValues::b_series(int q) const {
  if (q < 1) throw std::out_of_range("series index must be >= 1");
  if (q <= static_cast<int>(b_series_.size())) return b_series_[static_cast<std::size_t>(q - 1)];
  return pattern_series(f_, Side::B, q, pressure_.point(), false, opts_.series).value;
}

LogValue EigenValues::alpha_from_series(LogValue series) const {
  return LogValue(log_alpha_factor_ + series.log());
}

LogValue EigenValues::beta_from_series(LogValue series) const {
  return LogValue(log_beta_factor_ + series.log());
}

LogValue EigenValues::alpha(int q) const { return alpha_from_series(d_series(q)); }
LogValue EigenValues::beta(int q) const { return beta_from_series(b_series(q)); }

LogValue EigenValues::at(const PatternPoint& p) const {
  if (p.first_infinite()) return p.lead == Symbol::Zero ? LogValue::one() : beta_inf_;
  return p.lead == Symbol::Zero ? alpha(p.first) : beta(p.first);
}

EigenValues h_values(const WaltersPotential& f, double t, const PressureOptions& popts,
                     const EigenOptions& eopts) {
  return EigenValues(f, solve_pressure(f, t, popts), eopts);
}

std::optional<LogValue> h_on_word(const EigenValues& h, const Word& w) {
  const auto& runs = w.runs();
  if (runs.size() < 2) return std::nullopt;
  const int p = runs.front().length;
  return runs.front().symbol == Symbol::Zero ? h.alpha(p) : h.beta(p);
}

double eigen_residual(const EigenValues& h, const PatternPoint& p) {
  if (!p.first_infinite() && p.first < 1) throw std::invalid_argument("pattern needs a first run");
  const WaltersPotential& f = h.potential();
  const double t = h.t();
  double lhs = -std::numeric_limits<double>::infinity();
  for (Symbol s : {Symbol::Zero, Symbol::One}) {
    const PatternPoint pre = p.prepend(s);
    lhs = log_add(lhs, t * pattern_value(f, pre) + h.at(pre).log());
  }
  const double rhs = h.pressure().pressure + h.at(p).log();
  return std::abs(std::expm1(lhs - rhs));
}

double max_eigen_residual(const EigenValues& h, int q_max) {
  double worst = std::max(eigen_residual(h, PatternPoint::zero_inf()),
                          eigen_residual(h, PatternPoint::one_inf()));
  for (int q = 1; q <= q_max; ++q) {
    worst = std::max({worst, eigen_residual(h, PatternPoint::zero_run(q)),
                      eigen_residual(h, PatternPoint::one_run(q))});
  }
  return worst;
}

}  // namespace walters
