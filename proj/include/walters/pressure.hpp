#pragma once

#include "walters/numerics.hpp"
#include "walters/potential.hpp"

namespace walters {

struct PressureOptions {
  double tol = 1e-12;
  int max_iterations = 400;
  SeriesOptions series{};
};

struct PressureSolution {
  double t = 0.0;
  double pressure = 0.0;
  /// P(tf) - t*max(a,c); equals P(tf) - t*beta(f) whenever a == c.
  double epsilon = 0.0;
  double reference = 0.0;
  int iterations = 0;
  double residual = 0.0;

  PressurePoint point() const noexcept { return {t, reference, epsilon}; }
};

/// G = log D(P) + log B(P) - 2P at q = 1; zero exactly at P = P(tf).
double pressure_equation_residual(const WaltersPotential& f, const PressurePoint& p,
                                  const SeriesOptions& opts = {});

/// Root of D(P)*B(P) = e^{2P} by bisection on log(P - t*max(a,c)).
PressureSolution solve_pressure(const WaltersPotential& f, double t,
                                const PressureOptions& opts = {});

/// epsilon_t = P(tf) - t*beta(f); requires a == c.
double pressure_excess(const WaltersPotential& f, double t, const PressureOptions& opts = {});

}  // namespace walters
