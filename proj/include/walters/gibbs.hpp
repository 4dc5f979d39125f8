#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "walters/eigen.hpp"
#include "walters/numerics.hpp"
#include "walters/potential.hpp"
#include "walters/pressure.hpp"

namespace walters {

/// Gibbs state mu_t = h_t nu_t on cylinders.
///
/// Top level: mu[0] = S0/(S0+S1), mu[1] = S1/(S0+S1), mu[01] = mu[10] = 1/(S0+S1),
/// with S0 = (weighted D series)/(D series) at q = 1 and S1 likewise on the B
/// side. Longer words reduce to shorter ones through
///   mu[w] = mu[sigma w] * exp(t f|_w + log h|_w - log h|_{sigma w} - P)
/// whenever f is constant on [w]. The remaining words (pure runs s^n and
/// s s'^q) are summed in closed form over their run-length extensions. A heavy
/// pure run uses mu[s^n] = mu[s] - sum_{j<n} mu[s^j s'] via log1p instead.
///
/// Cylinder lookups are memoized behind a mutex; a table can be shared
/// between threads.
class GibbsTable {
 public:
  explicit GibbsTable(EigenValues h);

  double t() const noexcept { return h_.t(); }
  const EigenValues& eigen() const noexcept { return h_; }

  LogValue s0() const noexcept { return s0_; }
  LogValue s1() const noexcept { return s1_; }
  LogValue mu0() const noexcept { return mu0_; }
  LogValue mu1() const noexcept { return mu1_; }
  LogValue mu01() const noexcept { return mu01_; }

  /// log(mu[0]/mu[1]) = log S0 - log S1.
  double ratio_log() const noexcept { return s0_.log() - s1_.log(); }

  LogValue cylinder(const Word& w) const;

  /// S0 (side D) or S1 (side B) through 1 + sum_{j>=2} e^{-(j-1)P + t(a_2+...+a_j)} alpha_j/alpha_1.
  /// Independent of the weighted closed form; needs P - t*a not too small.
  LogValue s_via_eigen_ratios(Side side, int max_terms = 200'000) const;

 private:
  LogValue compute(const Word& w) const;
  LogValue weighted_series(Side side, int q) const;

  EigenValues h_;
  LogValue s0_, s1_, mu0_, mu1_, mu01_;
  double gap_a_ = 0.0;
  double gap_c_ = 0.0;

  struct Cache {
    std::mutex mutex;
    std::map<std::string, LogValue> values;
  };
  std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

GibbsTable top_cylinders(const WaltersPotential& f, double t, const PressureOptions& popts = {},
                         const EigenOptions& eopts = {});

std::pair<LogValue, LogValue> s0_s1(const WaltersPotential& f, double t,
                                    const PressureOptions& popts = {});

LogValue cylinder_measure(const WaltersPotential& f, double t, const Word& w,
                          const PressureOptions& popts = {});

double ratio_log(const WaltersPotential& f, double t, const PressureOptions& popts = {});

}  // namespace walters
