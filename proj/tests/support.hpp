// Shared instances and brute-force references for the test suites.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "walters/numerics.hpp"
#include "walters/potential.hpp"
#include "walters/spec_io.hpp"

namespace wt {

using namespace walters;

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// relative gap between two quantities given as logs
inline double log_rel(double log_x, double log_y) { return std::abs(std::expm1(log_x - log_y)); }

// term-by-term sum_{j=0}^{J} (j+1)^w e^{t lead_{q+j} + t(run_{q+1}+...+run_{q+j}) - jP}, linear P
inline double brute_series_log(const WaltersPotential& f, Side side, int q, double t, double P,
                               bool weighted, int J) {
  const SequenceSpec& lead = side == Side::D ? f.d_seq() : f.b_seq();
  const SequenceSpec& run = side == Side::D ? f.a_seq() : f.c_seq();
  std::vector<double> terms;
  double running = 0.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) running += run.value_at(q + j);
    double e = t * lead.value_at(q + j) + t * running - j * P;
    if (weighted) e += std::log(j + 1.0);
    terms.push_back(e);
  }
  return log_sum_exp(terms);
}

inline double brute_tail_sum(const SequenceSpec& s, int q, int J) {
  double acc = 0.0;
  for (int j = 1; j <= J; ++j) acc += s.value_at(q + j) - s.limit();
  return acc;
}

// Pressure from the brute-force series by plain bisection on P (moderate t only).
inline double brute_pressure(const WaltersPotential& f, double t, int J = 4000) {
  double lo = t * std::max(f.a(), f.c()) + 1e-9;
  double hi = t * sup_f(f) + std::log(2.0) + 1.0;
  auto G = [&](double P) {
    return brute_series_log(f, Side::D, 1, t, P, false, J) +
           brute_series_log(f, Side::B, 1, t, P, false, J) - 2 * P;
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (G(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Random member of the non-positive class: a, c negative with geometric tails to 0,
// b, d negative constants.
inline WaltersPotential random_nonpositive(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> val(-3.0, -0.1);
  std::uniform_real_distribution<double> coeff(-5.0, -0.1);
  std::uniform_real_distribution<double> ratio(0.2, 0.8);
  std::uniform_int_distribution<int> len(0, 3);
  std::uniform_real_distribution<double> bd(-3.0, -0.2);
  auto run_seq = [&] {
    std::vector<double> prefix;
    for (int i = len(rng); i > 0; --i) prefix.push_back(val(rng));
    const double cf = coeff(rng);
    const double r = ratio(rng);
    return SequenceSpec(2, std::move(prefix), GeometricTail{0.0, cf, r});
  };
  SequenceSpec a = run_seq();
  SequenceSpec c = run_seq();
  const double b = bd(rng);
  const double d = bd(rng);
  return WaltersPotential(std::move(a), SequenceSpec::constant(1, b), std::move(c),
                          SequenceSpec::constant(1, d));
}

inline std::vector<WaltersPotential> nonpositive_corpus(std::uint64_t seed = 20240611, int n = 20) {
  std::mt19937_64 rng(seed);
  std::vector<WaltersPotential> out;
  for (int i = 0; i < n; ++i) out.push_back(random_nonpositive(rng));
  return out;
}

}  // namespace wt
