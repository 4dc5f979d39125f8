#include "doctest.h"
#include "support.hpp"
#include "walters/eigen.hpp"

using namespace walters;

TEST_CASE("zero potential eigenfunction is 1") {
  const WaltersPotential z = constant_potential(0.0);
  for (double t : {0.5, 1.0, 10.0, 100.0}) {
    const EigenValues h = h_values(z, t, {}, EigenOptions{.q_max = 30});
    CHECK(h.at(PatternPoint::zero_inf()).log() == 0.0);
    CHECK(std::abs(h.beta_inf().linear() - 1.0) <= 1e-12);
    for (int q = 1; q <= 30; ++q) {
      CHECK(std::abs(h.alpha(q).linear() - 1.0) <= 1e-12);
      CHECK(std::abs(h.beta(q).linear() - 1.0) <= 1e-12);
    }
    CHECK(max_eigen_residual(h, 30) <= 1e-12);
    REQUIRE(h_on_word(h, Word("10")).has_value());
    CHECK(std::abs(h_on_word(h, Word("10"))->linear() - 1.0) <= 1e-12);
  }
}

TEST_CASE("example beta_inf = e^{-t/2}") {
  for (double b1 : {-1.0, -0.2}) {
    const WaltersPotential f = example1_potential(b1);
    for (double t : {1.0, 2.0, 5.0, 20.0, 50.0}) {
      const EigenValues h = h_values(f, t);
      CHECK(wt::log_rel(h.beta_inf().log(), -t / 2) <= 1e-10);
    }
    CHECK(h_values(f, 2.0).beta_inf().linear() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
}

TEST_CASE("h_on_word") {
  const EigenValues h = h_values(example1_potential(), 1.0);
  REQUIRE(h_on_word(h, Word("001")).has_value());
  CHECK(h_on_word(h, Word("001"))->log() == h.alpha(2).log());
  CHECK(h_on_word(h, Word("0010110"))->log() == h.alpha(2).log());
  CHECK(h_on_word(h, Word("1110"))->log() == h.beta(3).log());
  CHECK_FALSE(h_on_word(h, Word("111")).has_value());
  CHECK_FALSE(h_on_word(h, Word("0")).has_value());
}

TEST_CASE("eigen recurrence residuals") {
  std::vector<WaltersPotential> fs{example1_potential(), example1_potential(-0.2), thm2_potential(),
                                   thm2_potential().mirrored(), symmetric_potential()};
  for (const auto& f : fs) {
    for (double t : {1.0, 10.0, 50.0}) {
      const EigenValues h = h_values(f, t, {}, EigenOptions{.q_max = 30});
      CHECK(max_eigen_residual(h, 30) < 1e-9);
    }
  }
  for (const auto& f : wt::nonpositive_corpus()) {
    for (double t : {0.5, 2.0, 10.0}) {
      const EigenValues h = h_values(f, t, {}, EigenOptions{.q_max = 30});
      CHECK(max_eigen_residual(h, 30) < 1e-9);
    }
  }
}

TEST_CASE("zero pattern identity at t = 1") {
  // preimages 0^inf and 10^inf: e^{ta} + e^{td} beta_1 = e^P, a and d limits
  const WaltersPotential f = example1_potential();
  const EigenValues h = h_values(f, 1.0);
  CHECK(eigen_residual(h, PatternPoint::zero_inf()) < 1e-9);
  const double lhs = log_add(f.a(), f.d() + h.beta(1).log());
  CHECK(std::abs(std::expm1(lhs - h.pressure().pressure)) < 1e-9);
}

TEST_CASE("alpha_q stabilizes beyond the prefix") {
  for (const auto& f : {example1_potential(), thm2_potential()}) {
    const EigenValues h = h_values(f, 1.0, {}, EigenOptions{.q_max = 40});
    double prev = INFINITY;
    for (int q = 3; q < 40; ++q) {
      const double step = std::abs(h.alpha(q + 1).log() - h.alpha(q).log());
      if (step < 1e-13) break;
      CHECK(step < prev);
      prev = step;
    }
  }
}

TEST_CASE("alpha_q against brute-force series") {
  int checked = 0;
  for (const auto& f : {example1_potential(), thm2_potential(), symmetric_potential()}) {
    for (double t : {0.5, 1.0, 3.0}) {
      const EigenValues h = h_values(f, t);
      const double P = h.pressure().pressure;
      const double factor = std::log(-std::expm1(t * f.a() - P)) - t * f.d();
      // truncated sum only resolves 1e-10 when e^{-J gap} is negligible
      if ((P - t * std::max(f.a(), f.c())) * 20000 < 60) continue;
      ++checked;
      for (int q : {1, 2, 3, 7, 15}) {
        const double want = factor + wt::brute_series_log(f, Side::D, q, t, P, false, 20000);
        CHECK(wt::log_rel(h.alpha(q).log(), want) <= 1e-10);
      }
    }
  }
  CHECK(checked >= 4);
}

TEST_CASE("values past q_max match the cached ones") {
  const WaltersPotential f = thm2_potential();
  const EigenValues small = h_values(f, 3.0, {}, EigenOptions{.q_max = 4});
  const EigenValues big = h_values(f, 3.0, {}, EigenOptions{.q_max = 40});
  for (int q = 1; q <= 40; ++q) {
    CHECK(small.alpha(q).log() == big.alpha(q).log());
    CHECK(small.beta(q).log() == big.beta(q).log());
  }
}
