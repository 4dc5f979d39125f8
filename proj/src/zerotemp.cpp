#include "walters/zerotemp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "walters/errors.hpp"
#include "walters/gibbs.hpp"

namespace walters {

namespace {

constexpr const char* kModule = "zerotemp";
constexpr double kEquationTol = 1e-10;
constexpr double kSupTol = 1e-15;

const SequenceSpec& lead_seq(const WaltersPotential& f, Side side) {
  return side == Side::D ? f.d_seq() : f.b_seq();
}
const SequenceSpec& run_seq(const WaltersPotential& f, Side side) {
  return side == Side::D ? f.a_seq() : f.c_seq();
}

}  // namespace

double beta_max(const WaltersPotential& f) {
  if (f.a() != f.c()) {
    throw HypothesisViolation(kModule, "beta(f) = a = c requires a == c (a = " +
                                           std::to_string(f.a()) + ", c = " +
                                           std::to_string(f.c()) + ")");
  }
  return f.a();
}

BranchSup sup_branch(const WaltersPotential& f, Side side, int q, double tol) {
  if (q < 1) throw SpecError(kModule, "sup_branch needs q >= 1");
  beta_max(f);
  const SequenceSpec& lead = lead_seq(f, side);
  const SequenceSpec& run = run_seq(f, side);

  BranchSup out;
  out.limit_value = lead.limit() + run.tail_sum(q);
  const double scaled_tol = tol * std::max(1.0, std::abs(out.limit_value));

  // J*: past both prefixes with |g(j) - limit| <= tol from there on
  int j_star = 0;
  while (true) {
    const int n = q + j_star;
    if (n > lead.last_prefix_index() && n >= run.last_prefix_index() &&
        lead.deviation_bound(n) + run.tail_sum_bound(n) <= scaled_tol) {
      break;
    }
    if (++j_star > 10'000'000) throw NonConvergence(kModule, "sup_branch horizon runaway");
  }

  // g(j) - j*beta uses deviations since a_n - beta = a_n - a
  const int last = std::max(j_star - 1, 0);
  double best = -std::numeric_limits<double>::infinity();
  int arg = 0;
  double dev = 0.0;
  for (int j = 0; j <= last; ++j) {
    if (j > 0) dev += run.deviation_at(q + j);
    const double g = lead.value_at(q + j) + dev;
    if (g > best) {
      best = g;
      arg = j;
    }
  }
  out.argmax = arg;
  if (best >= out.limit_value) {
    out.value = best;
    out.attained_in_limit = false;
  } else {
    out.value = out.limit_value;
    out.attained_in_limit = true;
  }
  return out;
}

MaxHypothesis check_max_hypothesis(const WaltersPotential& f) {
  const double beta = beta_max(f);
  const BranchSup sd = sup_branch(f, Side::D, 1, kSupTol);
  const BranchSup sb = sup_branch(f, Side::B, 1, kSupTol);
  MaxHypothesis out;
  out.sup_d = sd.value;
  out.sup_b = sb.value;
  out.two_beta = 2.0 * beta;
  const double sum = sd.value + sb.value;
  const double tol = 1e-12 * std::max(1.0, std::abs(out.two_beta));
  const bool exceeds = sum > out.two_beta + tol;
  const bool reaches = sum >= out.two_beta - tol;
  const bool finite = !sd.attained_in_limit && !sb.attained_in_limit;
  if (exceeds || (reaches && finite)) {
    out.pass = false;
    out.j0 = sd.argmax;
    out.j1 = sb.argmax;
  }
  return out;
}

const char* to_string(ACase c) {
  switch (c) {
    case ACase::Zero: return "Zero";
    case ACase::A1: return "A1";
    case ACase::A2: return "A2";
    case ACase::A3: return "A3";
  }
  return "?";
}

ACase a_case_from_string(const std::string& s) {
  for (ACase c : {ACase::Zero, ACase::A1, ACase::A2, ACase::A3}) {
    if (s == to_string(c)) return c;
  }
  throw SpecError(kModule, "unknown A case '" + s + "'");
}

double a_equation_rhs(const WaltersPotential& f, double y) {
  const double sd = sup_branch(f, Side::D, 1).value;
  const double sb = sup_branch(f, Side::B, 1).value;
  const double ta = f.a_seq().tail_sum(1);
  const double tc = f.c_seq().tail_sum(1);
  return std::max(sd, f.d() + ta - y) + std::max(sb, f.b() + tc - y);
}

ZeroTempConstant compute_A(const WaltersPotential& f) {
  const double beta = beta_max(f);
  const MaxHypothesis hyp = check_max_hypothesis(f);
  if (!hyp.pass) {
    throw HypothesisViolation(kModule, "periodic orbit (0^" + std::to_string(hyp.j0 + 1) + " 1^" +
                                           std::to_string(hyp.j1 + 1) + ")^inf reaches beta(f)");
  }
  const double sd = hyp.sup_d;
  const double sb = hyp.sup_b;
  const double ta = f.a_seq().tail_sum(1);
  const double tc = f.c_seq().tail_sum(1);
  const double b = f.b();
  const double d = f.d();

  const std::pair<double, ACase> candidates[] = {
      {0.0, ACase::Zero},
      {(d + b) / 2 + ta / 2 + tc / 2 - beta, ACase::A1},
      {b + tc + sd - 2 * beta, ACase::A2},
      {d + ta + sb - 2 * beta, ACase::A3},
  };

  std::vector<std::pair<double, ACase>> accepted;
  for (const auto& [y, kase] : candidates) {
    if (y > 1e-12) continue;
    const double rhs = std::max(sd, d + ta - y) + std::max(sb, b + tc - y);
    if (std::abs(rhs - 2 * beta) <= kEquationTol) accepted.emplace_back(std::min(y, 0.0), kase);
  }
  if (accepted.empty()) throw NoCandidate(kModule, "no candidate <= 0 solves the A equation");
  for (const auto& [y, kase] : accepted) {
    if (std::abs(y - accepted.front().first) > 1e-9) {
      throw MultipleCandidates(kModule, std::string("candidates ") + to_string(accepted.front().second) +
                                            " and " + to_string(kase) + " both solve the A equation");
    }
  }
  return {accepted.front().first, accepted.front().second};
}

bool is_nonpositive(const WaltersPotential& f) {
  return f.a() == 0.0 && f.c() == 0.0 && f.a_seq().all_strictly_negative() &&
         f.c_seq().all_strictly_negative() && f.b_seq().is_constant() && f.b() < 0.0 &&
         f.d_seq().is_constant() && f.d() < 0.0;
}

NonPositiveSums nonpositive_sums(const WaltersPotential& f) {
  return {f.a_seq().tail_sum(1), f.c_seq().tail_sum(1), f.b(), f.d()};
}

double nonpositive_A(const WaltersPotential& f) {
  if (!is_nonpositive(f)) throw NotNonPositive(kModule, "potential is not in the non-positive class");
  const NonPositiveSums s = nonpositive_sums(f);
  if (s.a_side_below()) return s.b + s.d + s.sum_c;
  if (s.c_side_below()) return s.b + s.d + s.sum_a;
  return (s.b + s.d) / 2 + s.sum_a / 2 + s.sum_c / 2;
}

Subaction::Subaction(const WaltersPotential& f, double A, int q_cache)
    : f_(f), A_(A), beta_(beta_max(f)) {
  max_d1_ = branch_d(1);
  one_inf_ = f_.b() - f_.d() - beta_ + max_d1_;
  zero_run_limit_ = A_ - f_.d() + std::max(f_.d(), f_.d() - A_);
  one_run_limit_ = -f_.d() - beta_ + A_ + max_d1_ + std::max(f_.b(), f_.b() - A_);
  for (int q = 1; q <= q_cache; ++q) {
    zero_runs_.push_back(A_ - f_.d() + branch_d(q));
    one_runs_.push_back(-f_.d() - beta_ + A_ + max_d1_ + branch_b(q));
  }
}

double Subaction::branch_d(int q) const {
  return std::max(sup_branch(f_, Side::D, q).value, f_.d() + f_.a_seq().tail_sum(q) - A_);
}

double Subaction::branch_b(int q) const {
  return std::max(sup_branch(f_, Side::B, q).value, f_.b() + f_.c_seq().tail_sum(q) - A_);
}

double Subaction::zero_run(int q) const {
  if (q < 1) throw SpecError(kModule, "run length must be >= 1");
  if (q <= static_cast<int>(zero_runs_.size())) return zero_runs_[static_cast<std::size_t>(q - 1)];
  return A_ - f_.d() + branch_d(q);
}

double Subaction::one_run(int q) const {
  if (q < 1) throw SpecError(kModule, "run length must be >= 1");
  if (q <= static_cast<int>(one_runs_.size())) return one_runs_[static_cast<std::size_t>(q - 1)];
  return -f_.d() - beta_ + A_ + max_d1_ + branch_b(q);
}

double Subaction::at(const PatternPoint& p) const {
  if (p.first_infinite()) return p.lead == Symbol::Zero ? 0.0 : one_inf_;
  return p.lead == Symbol::Zero ? zero_run(p.first) : one_run(p.first);
}

double subaction(const WaltersPotential& f, double A, const PatternPoint& p) {
  return Subaction(f, A, 0).at(p);
}

double calibration_residual(const WaltersPotential& f, const PatternFunction& V, int q_max) {
  const double beta = beta_max(f);
  std::vector<PatternPoint> points{PatternPoint::zero_inf(), PatternPoint::one_inf()};
  for (int q = 1; q <= q_max; ++q) {
    points.push_back(PatternPoint::zero_run(q));
    points.push_back(PatternPoint::one_run(q));
  }
  double worst = 0.0;
  for (const PatternPoint& y : points) {
    double best = -std::numeric_limits<double>::infinity();
    for (Symbol s : {Symbol::Zero, Symbol::One}) {
      const PatternPoint x = y.prepend(s);
      best = std::max(best, pattern_value(f, x) + V(x));
    }
    worst = std::max(worst, std::abs(V(y) - best + beta));
  }
  return worst;
}

const char* to_string(Selection s) {
  switch (s) {
    case Selection::Delta0: return "Delta0";
    case Selection::Delta1: return "Delta1";
    case Selection::MixedOrUndetermined: return "MixedOrUndetermined";
  }
  return "?";
}

Selection selection_from_string(const std::string& s) {
  for (Selection v : {Selection::Delta0, Selection::Delta1, Selection::MixedOrUndetermined}) {
    if (s == to_string(v)) return v;
  }
  throw SpecError(kModule, "unknown selection '" + s + "'");
}

SelectionVerdict select_measure(const WaltersPotential& f) {
  SelectionVerdict v;
  v.nonpositive = is_nonpositive(f);
  v.sum_a = f.a_seq().tail_sum(1);
  v.sum_c = f.c_seq().tail_sum(1);
  v.b = f.b();
  v.d = f.d();
  v.delta1_threshold = v.b + v.d + v.sum_c;
  v.delta0_threshold = v.b + v.d + v.sum_a;
  if (!v.nonpositive) return v;
  if (v.sum_a < v.delta1_threshold) {
    v.verdict = Selection::Delta1;
  } else if (v.sum_c < v.delta0_threshold) {
    v.verdict = Selection::Delta0;
  }
  return v;
}

SlopeFit numeric_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DegenerateFit(kModule, "slope fit needs at least 3 points");
  SlopeFit fit;
  const double n = static_cast<double>(points.size());
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [t, y] = points[i];
    if (!std::isfinite(t) || !std::isfinite(y)) throw DegenerateFit(kModule, "non-finite fit point");
    if (i > 0 && !(t > points[i - 1].first)) {
      throw DegenerateFit(kModule, "t values must be strictly increasing");
    }
    if (t <= 0.0) throw DegenerateFit(kModule, "t values must be positive");
    mt += t;
    my += y;
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (const auto& [t, y] : points) {
    stt += (t - mt) * (t - mt);
    sty += (t - mt) * (y - my);
    syy += (y - my) * (y - my);
  }
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt;
  double ss_res = 0.0;
  for (const auto& [t, y] : points) {
    const double r = y - (fit.intercept + fit.slope * t);
    fit.t.push_back(t);
    fit.log_values.push_back(y);
    fit.scaled.push_back(y / t);
    fit.residuals.push_back(r);
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

SlopeFit cylinder_rate(const WaltersPotential& f, const Word& w, std::span<const double> t_grid,
                       const PressureOptions& popts) {
  std::vector<std::pair<double, double>> pts;
  for (double t : t_grid) pts.emplace_back(t, cylinder_measure(f, t, w, popts).log());
  return numeric_slope(pts);
}

SlopeFit epsilon_rate(const WaltersPotential& f, std::span<const double> t_grid,
                      const PressureOptions& popts) {
  beta_max(f);
  std::vector<std::pair<double, double>> pts;
  for (double t : t_grid) pts.emplace_back(t, std::log(solve_pressure(f, t, popts).epsilon));
  return numeric_slope(pts);
}

namespace {

RateEstimate with_target(SlopeFit fit, std::optional<double> target) {
  RateEstimate r;
  r.target = target;
  if (target) {
    for (double s : fit.scaled) r.offset_from_target.push_back(s - *target);
  }
  r.fit = std::move(fit);
  return r;
}

}  // namespace

LimitReport limit_report(const WaltersPotential& f, int q_cap, std::span<const double> t_grid,
                         std::span<const Word> words, const PressureOptions& popts) {
  LimitReport r;
  r.beta = beta_max(f);
  const ZeroTempConstant A = compute_A(f);
  r.A = A.value;
  r.a_case = A.kase;
  r.a_equation_residual = std::abs(a_equation_rhs(f, A.value) - 2 * r.beta);
  if (is_nonpositive(f)) r.A_nonpositive = nonpositive_A(f);

  const Subaction V(f, A.value, q_cap);
  r.V.push_back({PatternPoint::zero_inf().label(), V.at(PatternPoint::zero_inf())});
  r.V.push_back({PatternPoint::one_inf().label(), V.one_inf()});
  for (int q = 1; q <= q_cap; ++q) {
    r.V.push_back({PatternPoint::zero_run(q).label(), V.zero_run(q)});
  }
  for (int q = 1; q <= q_cap; ++q) {
    r.V.push_back({PatternPoint::one_run(q).label(), V.one_run(q)});
  }
  r.v_zero_run_limit = V.zero_run_limit();
  r.v_one_run_limit = V.one_run_limit();
  r.calibration_residual =
      calibration_residual(f, [&V](const PatternPoint& p) { return V.at(p); }, q_cap);
  r.selection = select_measure(f);

  if (t_grid.size() >= 3) {
    r.rate_estimates.emplace("epsilon", with_target(epsilon_rate(f, t_grid, popts), A.value));
    for (const Word& w : words) {
      r.rate_estimates.emplace("mu[" + w.str() + "]",
                               with_target(cylinder_rate(f, w, t_grid, popts), std::nullopt));
    }
  }
  return r;
}

}  // namespace walters
