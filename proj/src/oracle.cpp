#include "walters/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "walters/errors.hpp"

namespace walters {

namespace {

constexpr const char* kModule = "oracle";

std::string word_of(std::uint32_t x, int len) {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 0; i < len; ++i) {
    if ((x >> (len - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

// Perron root and vectors of [[n00, n01], [n10, n11]] with n01, n10 >= 0,
// arranged to avoid cancellation in rho - n_ii
struct Perron2 {
  double rho;
  std::array<double, 2> right;
  std::array<double, 2> left;
};

Perron2 perron2(double n00, double n01, double n10, double n11) {
  const double h = 0.5 * (n00 - n11);
  const double D = std::hypot(h, std::sqrt(n01 * n10));
  Perron2 p{0.5 * (n00 + n11) + D, {}, {}};
  if (h >= 0) {
    p.right = {h + D, n10};
    p.left = {h + D, n01};
  } else {
    p.right = {n01, D - h};
    p.left = {n10, D - h};
  }
  return p;
}

}  // namespace

PatternPoint extended_pattern(const Word& u, Extension ext) {
  // three copies close the first two runs of any non-constant periodic word
  const Word w = ext == Extension::Periodic ? Word(u.str() + u.str() + u.str()) : u;
  const auto& runs = w.runs();
  const Symbol lead = runs.front().symbol;
  const int p = runs.front().length;
  const bool zero = lead == Symbol::Zero;
  if (runs.size() == 1) return zero ? PatternPoint::zero_inf() : PatternPoint::one_inf();
  if (p >= 2) return zero ? PatternPoint::zero_run(p) : PatternPoint::one_run(p);
  if (runs.size() == 2) return zero ? PatternPoint::zero_one_inf() : PatternPoint::one_zero_inf();
  const int q = runs[1].length;
  return zero ? PatternPoint::zero_one_run(q) : PatternPoint::one_zero_run(q);
}

DepthKModel::DepthKModel(const WaltersPotential& f, double t, int k, const OracleOptions& opts)
    : k_(k), t_(t), opts_(opts) {
  if (k < 2 || k > opts.max_depth) {
    throw SpecError(kModule, "depth k must lie in [2, " + std::to_string(opts.max_depth) + "]");
  }
  if (!(t > 0.0) || !std::isfinite(t)) throw SpecError(kModule, "t must be positive");
  const std::uint32_t n = std::uint32_t{1} << k;
  log_w_.resize(2 * static_cast<std::size_t>(n));
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t u = x << 1;
    log_w_[2 * x] = t * pattern_value(f, extended_pattern(Word(word_of(u, k + 1)), opts.extension));
    log_w_[2 * x + 1] =
        t * pattern_value(f, extended_pattern(Word(word_of(u | 1u, k + 1)), opts.extension));
  }

  std::vector<double> right(n, 0.0);
  std::vector<double> left(n, 0.0);
  double log_left = 0.0;
  if (power_iterate(right, false, log_lambda_) && power_iterate(left, true, log_left)) {
    method_ = OracleMethod::Power;
  } else {
    method_ = OracleMethod::Reduced;
    reduced_solve(right, left);
  }
  width_ = cw_width(right);
  if (!(width_ < 1e3 * opts.tol)) {
    throw NonConvergence(kModule, "eigenvector not certified at k = " + std::to_string(k_));
  }

  log_pi_.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) log_pi_[x] = left[x] + right[x];
  const double norm = log_sum_exp(log_pi_);
  for (double& v : log_pi_) v -= norm;
}

bool DepthKModel::power_iterate(std::vector<double>& v, bool left, double& log_lambda) {
  const std::uint32_t n = static_cast<std::uint32_t>(v.size());
  const std::uint32_t mask = n - 1;
  const int shift = k_ - 1;
  std::vector<double> next(n);
  for (int it = 1; it <= opts_.power_iterations; ++it) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint32_t x = 0; x < n; ++x) {
      double s;
      if (!left) {
        // (T v)(x) = sum_y e^{w(x,y)} v((x<<1|y) & mask)
        const std::uint32_t base = (x << 1) & mask;
        s = log_add(log_w_[2 * x] + v[base], log_w_[2 * x + 1] + v[base | 1u]);
      } else {
        // (v T)(x) = sum over predecessors p = (s << (k-1)) | (x >> 1)
        const std::uint32_t y = x & 1u;
        const std::uint32_t p0 = x >> 1;
        const std::uint32_t p1 = p0 | (1u << shift);
        s = log_add(log_w_[2 * p0 + y] + v[p0], log_w_[2 * p1 + y] + v[p1]);
      }
      next[x] = s;
      lo = std::min(lo, s - v[x]);
      hi = std::max(hi, s - v[x]);
    }
    const double top = *std::max_element(next.begin(), next.end());
    for (std::uint32_t x = 0; x < n; ++x) v[x] = next[x] - top;
    iterations_ = std::max(iterations_, it);
    if (hi - lo < opts_.tol) {
      log_lambda = 0.5 * (lo + hi);
      return true;
    }
  }
  return false;
}

void DepthKModel::reduced_solve(std::vector<double>& right, std::vector<double>& left) {
  const std::uint32_t n = static_cast<std::uint32_t>(right.size());
  const std::uint32_t mask = n - 1;
  const int shift = k_ - 1;
  const std::uint32_t zeros = 0;        // 0^k
  const std::uint32_t ones = mask;      // 1^k
  const std::uint32_t after0 = 1u;      // 0^{k-1}1
  const std::uint32_t after1 = mask - 1;  // 1^{k-1}0
  const std::uint32_t into0 = 1u << shift;  // 10^{k-1}
  const std::uint32_t into1 = mask >> 1;    // 01^{k-1}
  auto in_s = [&](std::uint32_t x) { return x == zeros || x == ones; };

  // weights scaled by the larger fixed-point loop
  const double log_scale = std::max(log_w_[2 * zeros], log_w_[2 * ones + 1]);
  std::vector<double> w(2 * static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::exp(log_w_[i] - log_scale);
  const double d0 = std::expm1(log_w_[2 * zeros] - log_scale);
  const double d1 = std::expm1(log_w_[2 * ones + 1] - log_scale);

  // z_j = (lam - T_RR)^{-1} T_RS e_j for both j at once; false if the series blows up
  std::vector<double> z(2 * static_cast<std::size_t>(n)), zn(z.size());
  auto resolve = [&](double lam) {
    std::fill(z.begin(), z.end(), 0.0);
    for (int it = 0; it < opts_.max_iterations; ++it) {
      double change = 0.0;
      for (std::uint32_t x = 0; x < n; ++x) {
        if (in_s(x)) {
          zn[2 * x] = zn[2 * x + 1] = 0.0;
          continue;
        }
        const std::uint32_t base = (x << 1) & mask;
        for (int j = 0; j < 2; ++j) {
          double acc = w[2 * x] * z[2 * base + j] + w[2 * x + 1] * z[2 * (base | 1u) + j];
          if (x == into0 && j == 0) acc += w[2 * x];
          if (x == into1 && j == 1) acc += w[2 * x + 1];
          acc /= lam;
          const double old = z[2 * x + j];
          if (acc > 0) change = std::max(change, std::abs(acc - old) / acc);
          zn[2 * x + j] = acc;
        }
      }
      std::swap(z, zn);
      iterations_ = std::max(iterations_, it + 1);
      if (!(z[2 * after0] < 1e250 && z[2 * after1 + 1] < 1e250)) return false;
      if (change < 1e-15) return true;
    }
    return false;
  };
  auto reduced = [&] {
    const double e0 = w[2 * zeros + 1];
    const double e1 = w[2 * ones];
    return perron2(d0 + e0 * z[2 * after0], e0 * z[2 * after0 + 1], e1 * z[2 * after1],
                   d1 + e1 * z[2 * after1 + 1]);
  };
  // g(log eta) = rho(M(lam)/s - I) - eta, decreasing; divergence means lam is too small
  auto g = [&](double x) {
    const double eta = std::exp(x);
    if (!resolve(1.0 + eta)) return 1.0;
    return reduced().rho - eta;
  };

  double row_max = 0.0;
  for (std::uint32_t x = 0; x < n; ++x) row_max = std::max(row_max, w[2 * x] + w[2 * x + 1]);
  double hi = std::log(std::max(row_max - 1.0, 1e-300)) + 1.0;
  double g_hi = g(hi);
  if (g_hi > 0) throw NonConvergence(kModule, "reduced solve: no upper bracket");
  double lo = hi;
  double g_lo = g_hi;
  while (g_lo <= 0) {
    hi = lo;
    g_hi = g_lo;
    lo -= 5.0;
    if (lo < std::log(1e-300)) throw NonConvergence(kModule, "reduced solve: no lower bracket");
    g_lo = g(lo);
  }
  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(
      g, lo, hi, g_lo, g_hi, boost::math::tools::eps_tolerance<double>(50), max_iter);
  const double eta = std::exp(0.5 * (root.first + root.second));
  if (!resolve(1.0 + eta)) throw NonConvergence(kModule, "reduced solve: resolvent diverged");
  const Perron2 p = reduced();
  log_lambda_ = log_scale + std::log1p(eta);

  for (std::uint32_t x = 0; x < n; ++x) {
    const double r = p.right[0] * z[2 * x] + p.right[1] * z[2 * x + 1];
    right[x] = std::log(r);
  }
  right[zeros] = std::log(p.right[0]);
  right[ones] = std::log(p.right[1]);

  // row series l_R = l_S T_SR (lam - T_RR)^{-1}
  const double lam = 1.0 + eta;
  std::vector<double> v(n, 0.0), vn(n);
  bool done = false;
  for (int it = 0; it < opts_.max_iterations && !done; ++it) {
    double change = 0.0;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_s(x)) {
        vn[x] = 0.0;
        continue;
      }
      const std::uint32_t y = x & 1u;
      const std::uint32_t p0 = x >> 1;
      const std::uint32_t p1 = p0 | (1u << shift);
      double acc = v[p0] * w[2 * p0 + y] + v[p1] * w[2 * p1 + y];
      if (x == after0) acc += p.left[0] * w[2 * zeros + 1];
      if (x == after1) acc += p.left[1] * w[2 * ones];
      acc /= lam;
      if (acc > 0) change = std::max(change, std::abs(acc - v[x]) / acc);
      vn[x] = acc;
    }
    std::swap(v, vn);
    done = change < 1e-15;
  }
  if (!done) throw NonConvergence(kModule, "reduced solve: left series did not settle");
  for (std::uint32_t x = 0; x < n; ++x) left[x] = std::log(v[x]);
  left[zeros] = std::log(p.left[0]);
  left[ones] = std::log(p.left[1]);
}

double DepthKModel::cw_width(const std::vector<double>& log_v) const {
  const std::uint32_t n = static_cast<std::uint32_t>(log_v.size());
  const std::uint32_t mask = n - 1;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t base = (x << 1) & mask;
    const double s = log_add(log_w_[2 * x] + log_v[base], log_w_[2 * x + 1] + log_v[base | 1u]);
    lo = std::min(lo, s - log_v[x]);
    hi = std::max(hi, s - log_v[x]);
  }
  return std::isfinite(hi - lo) ? hi - lo : std::numeric_limits<double>::infinity();
}

LogValue DepthKModel::cylinder(const Word& w) const {
  const int len = static_cast<int>(w.size());
  if (len > k_) throw SpecError(kModule, "word longer than the oracle depth");
  std::uint32_t prefix = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    prefix = (prefix << 1) | (w.at(i) == Symbol::One ? 1u : 0u);
  }
  const int free_bits = k_ - len;
  const std::uint32_t first = prefix << free_bits;
  const std::uint32_t count = std::uint32_t{1} << free_bits;
  LogSumAccumulator acc;
  for (std::uint32_t r = 0; r < count; ++r) acc.add(log_pi_[first | r]);
  return LogValue(acc.result());
}

double oracle_pressure(const WaltersPotential& f, double t, int k, const OracleOptions& opts) {
  return DepthKModel(f, t, k, opts).log_lambda();
}

double oracle_cylinder(const WaltersPotential& f, double t, int k, const Word& w,
                       const OracleOptions& opts) {
  return DepthKModel(f, t, k, opts).cylinder(w).linear();
}

}  // namespace walters
