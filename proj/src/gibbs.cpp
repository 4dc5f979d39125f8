#include "walters/gibbs.hpp"

#include <cmath>

#include "walters/errors.hpp"

namespace walters {

namespace {
constexpr const char* kModule = "gibbs";
}

GibbsTable::GibbsTable(EigenValues h) : h_(std::move(h)) {
  const PressurePoint p = h_.pressure().point();
  const WaltersPotential& f = h_.potential();
  gap_a_ = side_gap(f, Side::D, p);
  gap_c_ = side_gap(f, Side::B, p);

  s0_ = weighted_series(Side::D, 1) / h_.d_series(1);
  s1_ = weighted_series(Side::B, 1) / h_.b_series(1);
  mu01_ = LogValue(-(s0_ + s1_).log());
  // mu[0] = 1/(1 + S1/S0): keeps log mu of the heavy side accurate when it is near 1
  const double r = s0_.log() - s1_.log();
  mu0_ = LogValue(-std::log1p(std::exp(-r)));
  mu1_ = LogValue(-std::log1p(std::exp(r)));
}

LogValue GibbsTable::weighted_series(Side side, int q) const {
  return pattern_series(h_.potential(), side, q, h_.pressure().point(), true).value;
}

LogValue GibbsTable::cylinder(const Word& w) const {
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(w.str()); it != cache_->values.end()) return it->second;
  }
  const LogValue value = compute(w);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(w.str(), value);
  return value;
}

LogValue GibbsTable::compute(const Word& w) const {
  const WaltersPotential& f = h_.potential();
  const double t = h_.t();
  const double pressure = h_.pressure().pressure;
  const auto& runs = w.runs();
  const Symbol lead = runs.front().symbol;
  const bool zero = lead == Symbol::Zero;

  if (w.size() == 1) return zero ? mu0_ : mu1_;
  if (runs.size() == 1) {
    // mu[0^n] = sum_{j>=n} mu[0^j 1] = mu[01] e^{t(a_2+...+a_n) - (n-1)P} D^w_n / D_1
    const int n = runs.front().length;
    const SequenceSpec& run = zero ? f.a_seq() : f.c_seq();
    const double gap = zero ? gap_a_ : gap_c_;
    const Side side = zero ? Side::D : Side::B;
    const LogValue base = zero ? h_.d_series(1) : h_.b_series(1);
    // heavy run: mu[s^n] = mu[s] - sum_{j<n} mu[s^j s'] is the accurate form
    const LogValue top = zero ? mu0_ : mu1_;
    LogSumAccumulator removed;
    for (int j = 1; j < n; ++j) {
      removed.add(cylinder(Word(std::string(static_cast<std::size_t>(j), to_char(lead)) +
                                to_char(flip(lead))))
                      .log());
    }
    const double r = removed.result() - top.log();
    if (r < -std::log(2.0)) return LogValue(top.log() + std::log1p(-std::exp(r)));
    const double shift = t * run.deviation_sum(1, n - 1) - static_cast<double>(n - 1) * gap;
    return LogValue(mu01_.log() + shift + weighted_series(side, n).log() - base.log());
  }

  if (runs.size() == 2 && runs.front().length == 1) {
    // mu[0 1^q] = sum_{r>=q} mu[0 1^r 0]
    //           = mu[10] (alpha_1/beta_1) e^{t(c_2+...+c_q) - qP} B_q
    const int q = runs[1].length;
    const SequenceSpec& run = zero ? f.c_seq() : f.a_seq();
    const double gap = zero ? gap_c_ : gap_a_;
    const LogValue series = zero ? h_.b_series(q) : h_.d_series(q);
    const LogValue h_ratio = zero ? h_.alpha(1) / h_.beta(1) : h_.beta(1) / h_.alpha(1);
    const double shift =
        t * run.deviation_sum(1, q - 1) - static_cast<double>(q - 1) * gap - pressure;
    return LogValue(mu01_.log() + h_ratio.log() + shift + series.log());
  }

  const auto f_value = f_on_word(f, w);
  const auto h_here = h_on_word(h_, w);
  if (!f_value || !h_here) {
    throw ReductionFailure(kModule, "f or h not constant on [" + w.str() + "]");
  }
  const Word tail = w.shifted();
  const auto h_next = h_on_word(h_, tail);
  if (!h_next) throw ReductionFailure(kModule, "h not constant on [" + tail.str() + "]");
  return LogValue(cylinder(tail).log() + t * *f_value + h_here->log() - h_next->log() - pressure);
}

LogValue GibbsTable::s_via_eigen_ratios(Side side, int max_terms) const {
  const WaltersPotential& f = h_.potential();
  const double t = h_.t();
  const bool d_side = side == Side::D;
  const SequenceSpec& run = d_side ? f.a_seq() : f.c_seq();
  const double gap = d_side ? gap_a_ : gap_c_;
  const double base = (d_side ? h_.d_series(1) : h_.b_series(1)).log();
  const double tail_factor = -std::log(-std::expm1(-gap));  // 1/(1 - e^{-gap})

  LogSumAccumulator acc;
  acc.add(0.0);
  double dev = 0.0;
  for (int j = 2; j <= max_terms; ++j) {
    dev += run.deviation_at(j);
    const double series = (d_side ? h_.d_series(j) : h_.b_series(j)).log();
    const double term = t * dev - static_cast<double>(j - 1) * gap + series - base;
    acc.add(term);
    // remaining terms shrink at least like e^{-gap} once past the prefixes
    if (j > run.last_prefix_index() + 2 && term + tail_factor < acc.result() - 40.0) {
      return LogValue(acc.result());
    }
  }
  throw NonConvergence(kModule, "eigen-ratio series for S did not settle");
}

GibbsTable top_cylinders(const WaltersPotential& f, double t, const PressureOptions& popts,
                         const EigenOptions& eopts) {
  return GibbsTable(h_values(f, t, popts, eopts));
}

std::pair<LogValue, LogValue> s0_s1(const WaltersPotential& f, double t,
                                    const PressureOptions& popts) {
  const GibbsTable g = top_cylinders(f, t, popts, EigenOptions{.q_max = 1});
  return {g.s0(), g.s1()};
}

LogValue cylinder_measure(const WaltersPotential& f, double t, const Word& w,
                          const PressureOptions& popts) {
  return top_cylinders(f, t, popts).cylinder(w);
}

double ratio_log(const WaltersPotential& f, double t, const PressureOptions& popts) {
  return top_cylinders(f, t, popts, EigenOptions{.q_max = 1}).ratio_log();
}

}  // namespace walters
