#pragma once

#include <cstdint>
#include <vector>

#include "walters/numerics.hpp"
#include "walters/potential.hpp"

namespace walters {

/// How a (k+1)-word is continued when f needs more than it shows.
enum class Extension {
  LastRun,   // u then (last symbol of u)^inf
  Periodic,  // u u u ...
};

struct OracleOptions {
  Extension extension = Extension::LastRun;
  double tol = 1e-13;
  /// Power sweeps before switching to the reduced solve.
  int power_iterations = 2'000;
  /// Neumann sweeps per resolvent in the reduced solve.
  int max_iterations = 200'000;
  int max_depth = 16;
};

enum class OracleMethod {
  Power,    // log-domain power iteration
  Reduced,  // Schur complement onto the fixed points 0^k, 1^k
};

/// Pattern class of the point obtained by extending u.
PatternPoint extended_pattern(const Word& u, Extension ext);

/// Depth-k Markov approximation of L_{tf}. States are k-words stored as
/// integers (first symbol in the high bit); state x moves to
/// (x << 1 | y) mod 2^k with log weight t * f_k(x y).
///
/// Power iteration stalls when 0^inf and 1^inf both carry nearly all the
/// weight (lambda_2 / lambda_1 -> 1). The model then eliminates every other
/// state: with S = {0^k, 1^k} and R the rest, lambda is the root of
/// rho(T_SS + T_SR (lambda - T_RR)^{-1} T_RS) = lambda, and the resolvent is a
/// Neumann series that converges at the rate of the cycles avoiding S.
class DepthKModel {
 public:
  DepthKModel(const WaltersPotential& f, double t, int k, const OracleOptions& opts = {});

  int k() const noexcept { return k_; }
  double t() const noexcept { return t_; }
  std::size_t states() const noexcept { return std::size_t{1} << k_; }
  double log_weight(std::uint32_t state, Symbol next) const {
    return log_w_[2 * state + static_cast<std::uint32_t>(next)];
  }

  /// log of the dominant eigenvalue.
  double log_lambda() const noexcept { return log_lambda_; }
  /// Collatz-Wielandt bracket width of the returned right eigenvector.
  double bracket_width() const noexcept { return width_; }
  int iterations() const noexcept { return iterations_; }
  OracleMethod method() const noexcept { return method_; }

  /// log of the stationary probability of the window x.
  double stationary_log(std::uint32_t state) const { return log_pi_[state]; }
  /// Stationary measure of [w]; requires |w| <= k.
  LogValue cylinder(const Word& w) const;

 private:
  bool power_iterate(std::vector<double>& v, bool left, double& log_lambda);
  void reduced_solve(std::vector<double>& right, std::vector<double>& left);
  double cw_width(const std::vector<double>& log_v) const;

  int k_;
  double t_;
  OracleOptions opts_;
  std::vector<double> log_w_;
  std::vector<double> log_pi_;
  double log_lambda_ = 0.0;
  double width_ = 0.0;
  int iterations_ = 0;
  OracleMethod method_ = OracleMethod::Power;
};

double oracle_pressure(const WaltersPotential& f, double t, int k, const OracleOptions& opts = {});
double oracle_cylinder(const WaltersPotential& f, double t, int k, const Word& w,
                       const OracleOptions& opts = {});

}  // namespace walters
