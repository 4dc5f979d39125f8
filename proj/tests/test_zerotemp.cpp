#include <cfloat>

#include "doctest.h"
#include "support.hpp"
#include "walters/errors.hpp"
#include "walters/gibbs.hpp"
#include "walters/report.hpp"
#include "walters/zerotemp.hpp"

using namespace walters;

namespace {

// (1/t) log X and the limit it is compared with are O(1) sums of sequence
// values; below a few dozen ulps of that size the gap is rounding
double noise_floor(double log_x, double t) { return 64 * DBL_EPSILON * std::max(1.0, std::abs(log_x) / t); }

// strictly decreasing, except that two consecutive values both at the noise floor tie
void check_decreasing_to_floor(const std::vector<double>& gaps, const std::vector<double>& floors) {
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const bool resolved = gaps[i - 1] > floors[i - 1] || gaps[i] > floors[i];
    if (resolved) CHECK(gaps[i] < gaps[i - 1]);
    else CHECK(gaps[i] <= floors[i]);
  }
}

WaltersPotential uneven_limits() {
  return WaltersPotential(SequenceSpec::constant(2, -1.0), SequenceSpec::constant(1, -1.0),
                          SequenceSpec::constant(2, 0.0), SequenceSpec::constant(1, -1.0));
}

std::vector<WaltersPotential> named() {
  return {example1_potential(), example1_potential(-0.2), thm2_potential(), thm2_potential().mirrored(),
          symmetric_potential()};
}

}  // namespace

TEST_CASE("beta_max") {
  CHECK(beta_max(example1_potential()) == 0.0);
  CHECK(beta_max(constant_potential(0.0)) == 0.0);
  CHECK(beta_max(constant_potential(-0.7)) == -0.7);
  CHECK(beta_max(constant_potential(1.5)) == 1.5);
  CHECK_THROWS_AS(beta_max(uneven_limits()), HypothesisViolation);
}

TEST_CASE("sup_branch") {
  const WaltersPotential f = example1_potential();
  const BranchSup d = sup_branch(f, Side::D, 1);
  CHECK(d.value == -1.0);
  CHECK(d.argmax == 0);
  CHECK_FALSE(d.attained_in_limit);
  const BranchSup b = sup_branch(f, Side::B, 1);
  CHECK(b.value == -1.0);
  CHECK_FALSE(b.attained_in_limit);
  for (int q : {1, 2, 7}) {
    CHECK(sup_branch(constant_potential(0.0), Side::D, q).value == 0.0);
    CHECK(sup_branch(constant_potential(0.0), Side::B, q).value == 0.0);
  }
}

TEST_CASE("sup_branch against enumeration") {
  for (const auto& f : wt::nonpositive_corpus()) {
    for (Side s : {Side::D, Side::B}) {
      for (int q : {1, 2, 4}) {
        const SequenceSpec& lead = s == Side::D ? f.d_seq() : f.b_seq();
        const SequenceSpec& run = s == Side::D ? f.a_seq() : f.c_seq();
        double best = -INFINITY;
        double running = 0.0;
        for (int j = 0; j <= 3000; ++j) {
          if (j > 0) running += run.value_at(q + j);
          best = std::max(best, lead.value_at(q + j) + running);
        }
        CHECK(sup_branch(f, s, q).value == doctest::Approx(best).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("check_max_hypothesis") {
  const MaxHypothesis z = check_max_hypothesis(constant_potential(0.0));
  CHECK_FALSE(z.pass);
  CHECK(z.j0 == 0);
  CHECK(z.j1 == 0);
  const MaxHypothesis e = check_max_hypothesis(example1_potential());
  CHECK(e.pass);
  CHECK(e.sup_d + e.sup_b == -2.0);
  CHECK(check_max_hypothesis(thm2_potential()).pass);
  CHECK(check_max_hypothesis(symmetric_potential()).pass);
  for (const auto& f : wt::nonpositive_corpus()) CHECK(check_max_hypothesis(f).pass);
}

TEST_CASE("compute_A on the named instances") {
  const ZeroTempConstant ex = compute_A(example1_potential());
  CHECK(ex.value == -3.5);
  CHECK(ex.kase == ACase::A1);
  CHECK(compute_A(example1_potential(-0.2)).value == -3.5);
  const ZeroTempConstant t2 = compute_A(thm2_potential());
  CHECK(t2.value == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(t2.kase == ACase::A2);
  const ZeroTempConstant mi = compute_A(thm2_potential().mirrored());
  CHECK(mi.value == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(mi.kase == ACase::A3);
  const ZeroTempConstant sy = compute_A(symmetric_potential());
  CHECK(sy.value == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK(sy.kase == ACase::A1);
  CHECK_THROWS_AS(compute_A(uneven_limits()), HypothesisViolation);
}

TEST_CASE("A re-substitution, sign and the non-positive closed form") {
  auto fs = wt::nonpositive_corpus();
  for (const auto& g : named()) fs.push_back(g);
  for (const auto& f : fs) {
    const ZeroTempConstant A = compute_A(f);
    CHECK(A.value <= 0.0);
    CHECK(std::abs(a_equation_rhs(f, A.value) - 2 * beta_max(f)) <= 1e-10);
    if (is_nonpositive(f)) CHECK(std::abs(nonpositive_A(f) - A.value) <= 1e-12);
  }
}

TEST_CASE("nonpositive_A cases") {
  CHECK(nonpositive_A(thm2_potential()) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(nonpositive_A(thm2_potential().mirrored()) == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(nonpositive_A(symmetric_potential()) == doctest::Approx(-3.0).epsilon(1e-14));
  CHECK_FALSE(is_nonpositive(example1_potential()));
  CHECK_THROWS_AS(nonpositive_A(example1_potential()), NotNonPositive);
  CHECK_THROWS_AS(nonpositive_A(constant_potential(0.0)), NotNonPositive);
}

TEST_CASE("the two strict cases never co-occur") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 5000; ++i) {
    const WaltersPotential f = wt::random_nonpositive(rng);
    const NonPositiveSums s = nonpositive_sums(f);
    const bool a_strict = s.sum_a < s.b + s.d + s.sum_c;
    const bool c_strict = s.sum_c < s.b + s.d + s.sum_a;
    CHECK_FALSE((a_strict && c_strict));
  }
}

TEST_CASE("subaction on the example") {
  for (double b1 : {-1.0, -0.2}) {
    const WaltersPotential f = example1_potential(b1);
    const Subaction V(f, compute_A(f).value);
    CHECK(V.at(PatternPoint::zero_inf()) == 0.0);
    CHECK(V.one_inf() == -0.5);
    for (int p = 2; p <= 6; ++p) {
      const double want = f.b() - f.a_seq().partial_sum(1, p - 1);
      CHECK(std::abs(V.zero_run(p) - want) <= 1e-14);
    }
    CHECK(V.zero_run(2) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(subaction(f, -3.5, PatternPoint::one_inf()) == -0.5);
  }
}

TEST_CASE("V(0^inf) = 0 everywhere and V is calibrated") {
  auto fs = wt::nonpositive_corpus();
  for (const auto& g : named()) fs.push_back(g);
  for (const auto& f : fs) {
    const Subaction V(f, compute_A(f).value);
    CHECK(V.at(PatternPoint::zero_inf()) == 0.0);
    CHECK(calibration_residual(f, [&V](const PatternPoint& p) { return V.at(p); }, 30) < 1e-9);
  }
}

TEST_CASE("calibration residual controls") {
  const WaltersPotential z = constant_potential(0.0);
  CHECK(calibration_residual(z, [](const PatternPoint&) { return 0.0; }, 30) == 0.0);
  const WaltersPotential f = example1_potential();
  const Subaction V(f, -3.5);
  const PatternPoint bumped = PatternPoint::zero_run(3);
  const auto perturbed = [&](const PatternPoint& p) {
    return V.at(p) + (p.lead == bumped.lead && p.first == bumped.first ? 0.1 : 0.0);
  };
  CHECK(calibration_residual(f, perturbed, 30) >= 0.1 - 1e-12);
}

TEST_CASE("subaction is the limit of (1/t) log h_t") {
  for (const auto& f : named()) {
    const Subaction V(f, compute_A(f).value);
    for (int q = 1; q <= 10; ++q) {
      std::vector<double> ga, gb, fa, fb;
      for (double t : {5.0, 10.0, 20.0, 40.0, 80.0}) {
        const EigenValues h = h_values(f, t, {}, EigenOptions{.q_max = 10});
        ga.push_back(std::abs(h.alpha(q).log() / t - V.zero_run(q)));
        gb.push_back(std::abs(h.beta(q).log() / t - V.one_run(q)));
        fa.push_back(noise_floor(h.alpha(q).log(), t));
        fb.push_back(noise_floor(h.beta(q).log(), t));
      }
      check_decreasing_to_floor(ga, fa);
      check_decreasing_to_floor(gb, fb);
      CHECK(ga.back() < 1e-8);
      CHECK(gb.back() < 1e-8);
    }
    const EigenValues h = h_values(f, 80.0);
    CHECK(std::abs(h.beta_inf().log() / 80.0 - V.one_inf()) <= 1e-12);
  }
}

TEST_CASE("eps_t diagnostic converges to A") {
  // Example-1 on the exact grid
  {
    const WaltersPotential f = example1_potential();
    double prev = INFINITY;
    for (double t : {20.0, 40.0, 80.0}) {
      const double gap = std::abs(std::log(solve_pressure(f, t).epsilon) / t + 3.5);
      CHECK(gap < prev);
      prev = gap;
    }
  }
  for (const auto& f : named()) {
    const double A = compute_A(f).value;
    std::vector<double> gaps, floors;
    for (double t : {2.0, 5.0, 10.0, 20.0, 40.0, 80.0}) {
      const double le = std::log(solve_pressure(f, t).epsilon);
      gaps.push_back(std::abs(le / t - A));
      floors.push_back(noise_floor(le, t));
    }
    check_decreasing_to_floor(gaps, floors);
    CHECK(gaps.back() < 1e-8);
  }
}

TEST_CASE("select_measure") {
  const SelectionVerdict t2 = select_measure(thm2_potential());
  CHECK(t2.verdict == Selection::Delta1);
  CHECK(t2.nonpositive);
  CHECK(t2.sum_a == doctest::Approx(-11.0).epsilon(1e-14));
  CHECK(t2.delta1_threshold == doctest::Approx(-4.0).epsilon(1e-14));
  CHECK(select_measure(thm2_potential().mirrored()).verdict == Selection::Delta0);
  const SelectionVerdict ex = select_measure(example1_potential());
  CHECK(ex.verdict == Selection::MixedOrUndetermined);
  CHECK_FALSE(ex.nonpositive);
  CHECK(select_measure(symmetric_potential()).verdict == Selection::MixedOrUndetermined);
  CHECK(select_measure(constant_potential(0.0)).verdict == Selection::MixedOrUndetermined);
}

TEST_CASE("Delta1 implies the ratio falls and mu[1] rises") {
  std::vector<WaltersPotential> fs{thm2_potential()};
  for (const auto& f : wt::nonpositive_corpus()) {
    if (select_measure(f).verdict == Selection::Delta1) fs.push_back(f);
  }
  CHECK(fs.size() >= 2);
  for (const auto& f : fs) {
    double prev_ratio = INFINITY;
    double prev_mu1 = -INFINITY;
    for (double t : {1.0, 5.0, 10.0, 20.0, 40.0}) {
      const GibbsTable g = top_cylinders(f, t);
      CHECK(g.ratio_log() < prev_ratio);
      CHECK(g.mu1().log() > prev_mu1);
      prev_ratio = g.ratio_log();
      prev_mu1 = g.mu1().log();
    }
  }
}

TEST_CASE("numeric_slope") {
  std::vector<std::pair<double, double>> pts;
  for (double t : {1.0, 2.0, 5.0, 9.0}) pts.emplace_back(t, -3.5 * t);
  const SlopeFit fit = numeric_slope(pts);
  CHECK(fit.slope == doctest::Approx(-3.5).epsilon(1e-14));
  CHECK(std::abs(fit.intercept) <= 1e-13);
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-14));
  REQUIRE(fit.scaled.size() == 4);
  CHECK(fit.scaled[2] == doctest::Approx(-3.5).epsilon(1e-15));

  std::vector<std::pair<double, double>> two{{1.0, 0.0}, {2.0, 1.0}};
  CHECK_THROWS_AS(numeric_slope(two), DegenerateFit);
  std::vector<std::pair<double, double>> dup{{1.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}};
  CHECK_THROWS_AS(numeric_slope(dup), DegenerateFit);
  std::vector<std::pair<double, double>> unordered{{2.0, 0.0}, {1.0, 1.0}, {3.0, 2.0}};
  CHECK_THROWS_AS(numeric_slope(unordered), DegenerateFit);
}

TEST_CASE("rates") {
  const std::vector<double> grid{20.0, 40.0, 60.0, 80.0};
  CHECK(std::abs(cylinder_rate(constant_potential(0.0), Word("0110"), grid).slope) <= 1e-12);
  const WaltersPotential f = example1_potential();
  CHECK(epsilon_rate(f, grid).slope == doctest::Approx(-3.5).epsilon(1e-8));
  for (const char* w : {"01", "10", "001", "0001"}) {
    const SlopeFit fit = cylinder_rate(f, Word(w), grid);
    CHECK(std::abs(fit.slope + 3.5) < 0.05);
    CHECK(std::abs(fit.scaled.back() + 3.5) < std::abs(fit.scaled.front() + 3.5));
  }
  // mu[0]/mu[1] on the Thm-2 instance decays exponentially
  std::vector<std::pair<double, double>> pts;
  for (double t : grid) pts.emplace_back(t, ratio_log(thm2_potential(), t));
  CHECK(numeric_slope(pts).slope < -1.0);
}

TEST_CASE("limit_report and its JSON form") {
  const std::vector<double> grid{20.0, 40.0, 80.0};
  const std::vector<Word> words{Word("01"), Word("001")};
  const LimitReport r = limit_report(example1_potential(), 12, grid, words);
  CHECK(r.beta == 0.0);
  CHECK(r.A == -3.5);
  CHECK(r.a_case == ACase::A1);
  CHECK_FALSE(r.A_nonpositive.has_value());
  CHECK(r.a_equation_residual <= 1e-10);
  CHECK(r.calibration_residual < 1e-9);
  CHECK(r.selection.verdict == Selection::MixedOrUndetermined);
  REQUIRE(r.rate_estimates.count("epsilon") == 1);
  CHECK(r.rate_estimates.at("epsilon").target.value() == -3.5);
  CHECK(r.rate_estimates.count("mu[001]") == 1);
  CHECK(r.V.size() == 2 + 2 * 12);

  const nlohmann::json j = r;
  const LimitReport back = j.get<LimitReport>();
  CHECK(nlohmann::json(back) == j);
  CHECK(j.at("A_case") == "A1");

  const LimitReport t2 = limit_report(thm2_potential(), 5);
  REQUIRE(t2.A_nonpositive.has_value());
  CHECK(*t2.A_nonpositive == doctest::Approx(t2.A).epsilon(1e-12));
  CHECK(t2.rate_estimates.empty());
  const nlohmann::json j2 = t2;
  CHECK(nlohmann::json(j2.get<LimitReport>()) == j2);
}
