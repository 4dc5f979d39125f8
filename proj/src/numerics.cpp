#include "walters/numerics.hpp"

#include <algorithm>

#include "walters/errors.hpp"

namespace walters {

namespace {
constexpr const char* kModule = "numerics";
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}  // namespace

LogValue LogValue::from_linear(double x) {
  if (x < 0.0 || std::isnan(x)) throw DomainError(kModule, "LogValue requires x >= 0");
  return LogValue(x == 0.0 ? kNegInf : std::log(x));
}

double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

LogValue operator+(LogValue x, LogValue y) { return LogValue(log_add(x.log_, y.log_)); }

double log_sum_exp(std::span<const double> terms) {
  double hi = kNegInf;
  for (double t : terms) hi = std::max(hi, t);
  if (hi == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - hi);
  return hi + std::log(sum);
}

void LogSumAccumulator::add(double log_term) {
  if (log_term == kNegInf) return;
  if (log_term > max_) {
    scaled_ = scaled_ * std::exp(max_ - log_term) + 1.0;
    max_ = log_term;
  } else {
    scaled_ += std::exp(log_term - max_);
  }
}

double LogSumAccumulator::result() const {
  return max_ == kNegInf ? kNegInf : max_ + std::log(scaled_);
}

LogValue geometric_sum(double z, int j1) {
  if (!(z < 0.0)) throw DomainError(kModule, "geometric sum requires z < 0");
  if (j1 < 0) throw DomainError(kModule, "geometric sum requires j1 >= 0");
  return LogValue(static_cast<double>(j1) * z - std::log(-std::expm1(z)));
}

LogValue weighted_geometric_sum(double z, int j1) {
  if (!(z < 0.0)) throw DomainError(kModule, "weighted geometric sum requires z < 0");
  if (j1 < 0) throw DomainError(kModule, "weighted geometric sum requires j1 >= 0");
  const double one_minus = -std::expm1(z);  // 1 - e^z
  const double inv_log = -std::log(one_minus);
  // e^{j1 z} (j1 x + x^2) with x = 1/(1 - e^z)
  return LogValue(static_cast<double>(j1) * z + 2.0 * inv_log +
                  std::log1p(static_cast<double>(j1) * one_minus));
}

PressurePoint PressurePoint::from_excess(const WaltersPotential& f, double t, double excess) {
  return {t, t * std::max(f.a(), f.c()), excess};
}

PressurePoint PressurePoint::from_pressure(const WaltersPotential& f, double t, double pressure) {
  const double reference = t * std::max(f.a(), f.c());
  return {t, reference, pressure - reference};
}

double side_gap(const WaltersPotential& f, Side side, const PressurePoint& p) {
  const double top = std::max(f.a(), f.c());
  const double own = side == Side::D ? f.a() : f.c();
  return p.excess + p.t * (top - own);
}

SeriesValue pattern_series(const WaltersPotential& f, Side side, int q, const PressurePoint& p,
                           bool weighted, const SeriesOptions& opts) {
  if (q < 1) throw DomainError(kModule, "pattern series requires q >= 1");
  const double gap = side_gap(f, side, p);
  if (!(gap > 0.0)) {
    throw DivergentSeries(kModule, "series diverges: P <= t*max(a,c) on side " +
                                       std::string(to_string(side)));
  }
  const SequenceSpec& lead = side == Side::D ? f.d_seq() : f.b_seq();
  const SequenceSpec& run = side == Side::D ? f.a_seq() : f.c_seq();
  const double t = p.t;
  const int lead_last = lead.last_prefix_index();
  const int run_last = run.last_prefix_index();

  LogSumAccumulator exact;
  double dev = 0.0;
  double correction = 0.0;
  int j = 0;
  for (;; ++j) {
    const int n = q + j;
    if (n > lead_last && n >= run_last) {
      correction = t * (lead.deviation_bound(n) + run.tail_sum_bound(n));
      if (correction <= opts.tail_tolerance) break;
    }
    if (j >= opts.max_exact_terms) {
      throw NonConvergence(kModule, "exact-term budget exhausted before the tail converged");
    }
    if (j > 0) dev += run.deviation_at(n);
    const double e = t * lead.value_at(n) + t * dev - static_cast<double>(j) * gap;
    exact.add(weighted ? e + std::log(static_cast<double>(j) + 1.0) : e);
  }

  const double constant = t * lead.limit() + t * run.tail_sum(q);
  const LogValue tail = weighted ? weighted_geometric_sum(-gap, j) : geometric_sum(-gap, j);
  const double tail_log = constant + tail.log();
  const double total = log_add(exact.result(), tail_log);

  SeriesValue out;
  out.value = LogValue(total);
  out.truncation_bound = std::expm1(correction) * std::exp(tail_log - total);
  out.exact_terms = j;
  return out;
}

}  // namespace walters
