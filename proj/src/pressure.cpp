#include "walters/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walters/errors.hpp"

namespace walters {

namespace {
constexpr const char* kModule = "pressure";
constexpr double kSmallestBracket = 1e-300;
}  // namespace

double pressure_equation_residual(const WaltersPotential& f, const PressurePoint& p,
                                  const SeriesOptions& opts) {
  const double log_d = pattern_series(f, Side::D, 1, p, false, opts).value.log();
  const double log_b = pattern_series(f, Side::B, 1, p, false, opts).value.log();
  // 2P = 2*reference + 2*excess, kept split to preserve tiny excesses
  return (log_d - 2.0 * p.reference) + log_b - 2.0 * p.excess;
}

PressureSolution solve_pressure(const WaltersPotential& f, double t, const PressureOptions& opts) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(kModule, "temperature parameter t must be > 0");

  int evaluations = 0;
  auto residual_at = [&](double log_excess) {
    ++evaluations;
    return pressure_equation_residual(f, PressurePoint::from_excess(f, t, std::exp(log_excess)),
                                      opts.series);
  };

  const double top = std::max(f.a(), f.c());
  const double upper_excess = t * sup_f(f) + std::log(2.0) - t * top;
  double hi = std::log(upper_excess);
  double g_hi = residual_at(hi);
  if (g_hi > opts.tol) {
    throw BracketFailure(kModule, "G > 0 at the upper bound t*sup f + log 2");
  }

  double eta = 1.0;
  double lo = 0.0;
  double g_lo = residual_at(lo);
  while (g_lo <= 0.0) {
    eta *= 0.5;
    if (eta < kSmallestBracket) {
      throw BracketFailure(kModule, "no sign change above t*max(a,c); excess below 1e-300");
    }
    lo = std::log(eta);
    g_lo = residual_at(lo);
  }
  if (lo > hi) {
    // the halving sequence started above the upper bound
    throw BracketFailure(kModule, "bracket inverted");
  }

  for (int i = 0; i < opts.max_iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double width = hi - lo;
    if (width <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
    const double g = residual_at(mid);
    if (g > 0.0) {
      lo = mid;
      g_lo = g;
    } else {
      hi = mid;
      g_hi = g;
      if (g == 0.0) break;
    }
  }

  const bool take_lo = std::abs(g_lo) < std::abs(g_hi);
  const double log_excess = take_lo ? lo : hi;
  const double residual = std::abs(take_lo ? g_lo : g_hi);
  if (!(residual <= opts.tol)) {
    throw NonConvergence(kModule, "bisection ended with |G| = " + std::to_string(residual));
  }

  PressureSolution out;
  out.t = t;
  out.epsilon = std::exp(log_excess);
  out.reference = t * top;
  out.pressure = out.reference + out.epsilon;
  out.iterations = evaluations;
  out.residual = residual;
  return out;
}

double pressure_excess(const WaltersPotential& f, double t, const PressureOptions& opts) {
  if (f.a() != f.c()) throw HypothesisViolation(kModule, "epsilon_t requires a == c");
  return solve_pressure(f, t, opts).epsilon;
}

}  // namespace walters
