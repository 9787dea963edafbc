#include <cmath>

#include <gtest/gtest.h>

#include "fracwave/mittag_leffler.hpp"
#include "oracles.hpp"

using namespace fracwave;

TEST(MittagLeffler, ClosedFormOrders) {
  EXPECT_NEAR(ml_series({1.0, 1.0}, 1e-12).value, std::exp(-1.0), 1e-12);
  EXPECT_NEAR(ml_series({2.0, 4.0}, 1e-12).value, std::cos(2.0), 1e-12);
  EXPECT_NEAR(ml({1.0, 3.0}).value, 0.0497870684, 1e-10);
  EXPECT_NEAR(ml({1.0, 3.0}).value, std::exp(-3.0), 1e-12);
}

TEST(MittagLeffler, ZeroArgumentIsOne) {
  for (double a : {1.0, 1.1, 1.5, 1.9, 2.0}) {
    EXPECT_EQ(ml({a, 0.0}).value, 1.0);
    EXPECT_EQ(ml_series({a, 0.0}).value, 1.0);
  }
}

TEST(MittagLeffler, ExponentialOrder) {
  const MittagLeffler e(1.0);
  for (double x = 0.0; x <= 700.0; x += 3.5) {
    const EvalResult r = e(x);
    EXPECT_LE(r.abs_err, 1e-12);
    EXPECT_NEAR(r.value, std::exp(-x), 1e-12) << x;
  }
}

TEST(MittagLeffler, CosineOrder) {
  using oracle::big;
  const MittagLeffler e(2.0);
  for (double x : {0.0, 0.5, 10.0, 1234.5, 1e5, 3.3e6, 9.9e7, 1e8}) {
    const double exact = static_cast<double>(cos(sqrt(big(x))));
    EXPECT_NEAR(e(x).value, exact, 1e-12) << x;
  }
}

TEST(MittagLeffler, SeriesAgainstOracle) {
  for (double a : {1.2, 1.5, 1.8}) {
    const MittagLeffler e(a);
    for (double x : {0.5, 5.0, 50.0}) {
      if (x >= e.switch_point()) continue;
      const EvalResult r = e.series(x);
      EXPECT_LE(r.abs_err, 1e-12);
      EXPECT_NEAR(r.value, oracle::mittag_leffler(a, x), r.abs_err + 1e-15) << a << " " << x;
    }
  }
}

TEST(MittagLeffler, AsymptoticLeadingTerm) {
  const EvalResult r = ml_asymptotic({1.5, 1e6});
  const double leading = 1.0 / (1e6 * std::tgamma(-0.5));
  EXPECT_NEAR(leading, -2.8209479e-7, 1e-14);
  EXPECT_NEAR(r.value, leading, 1e-12);
}

TEST(MittagLeffler, AsymptoticAgainstOracle) {
  // x = 100 is below the default switch point, so the smallest term is larger
  // than 1e-12; the value must still lie within it.
  const EvalResult r = ml_asymptotic({1.5, 100.0}, 1e-6);
  EXPECT_NEAR(r.value, oracle::mittag_leffler(1.5, 100.0), r.abs_err);
  for (double a : {1.3, 1.7}) {
    const MittagLeffler e(a);
    const double x = 1.5 * e.switch_point();
    const EvalResult s = e.asymptotic(x);
    EXPECT_NEAR(s.value, oracle::mittag_leffler(a, x), s.abs_err) << a;
  }
}

TEST(MittagLeffler, AsymptoticRejectsCosineOrder) {
  EXPECT_THROW((void)ml_asymptotic({2.0, 100.0}), asymptotic_divergence);
  EXPECT_THROW((void)ml_asymptotic({1.0, 100.0}), asymptotic_divergence);
  EXPECT_THROW((void)ml_asymptotic({1.5, 1.0}), asymptotic_divergence);
}

TEST(MittagLeffler, RegimesAgreeAcrossSwitch) {
  for (double a : {1.1, 1.5, 1.9}) {
    const MittagLeffler e(a);
    for (double f : {0.8, 0.9, 1.0, 1.1, 1.25}) {
      const double x = f * e.switch_point();
      const EvalResult s = e.series(x);
      const EvalResult z = e.asymptotic(x, 1e-8);
      EXPECT_NEAR(s.value, z.value, s.abs_err + z.abs_err) << a << " " << x;
    }
  }
  const MittagLeffler e(1.5);
  const EvalResult s = e.series(50.0);
  const EvalResult z = e.asymptotic(50.0, 1.0);
  EXPECT_NEAR(s.value, z.value, s.abs_err + z.abs_err);
}

TEST(MittagLeffler, DispatcherContinuousAtSwitch) {
  for (double a : {1.05, 1.3, 1.6, 1.95}) {
    const MittagLeffler e(a);
    const double x = e.switch_point();
    const double below = e(std::nextafter(x, 0.0)).value;
    const double above = e(x).value;
    EXPECT_NEAR(below, above, 2e-12) << a;
  }
}

TEST(MittagLeffler, AlgebraicDecayBound) {
  // Beyond the switch point the algebraic part dominates once the oscillating
  // exponential part has decayed below it.
  for (double a : {1.1, 1.3, 1.5, 1.7, 1.8, 1.9}) {
    const MittagLeffler e(a);
    const double bound_scale = 2.0 / std::abs(std::tgamma(1.0 - a));
    double x = e.switch_point();
    for (int i = 0; i < 60; ++i, x *= 1.5) {
      const double rho = std::pow(x, 1.0 / a);
      const double exp_part = (2.0 / a) * std::exp(rho * std::cos(M_PI / a));
      if (exp_part > 0.5 * bound_scale / x) continue;
      EXPECT_LE(std::abs(e(x).value), bound_scale / x) << a << " " << x;
    }
  }
  for (double a : {1.1, 1.3, 1.5, 1.7}) {
    const MittagLeffler e(a);
    const double x = e.switch_point();
    EXPECT_LE(std::abs(e(x).value), 2.0 / (x * std::abs(std::tgamma(1.0 - a)))) << a;
  }
}

TEST(MittagLeffler, SwitchPointTable) {
  for (double a = 1.05; a < 2.0; a += 0.05) {
    const MittagLeffler e(a);
    EXPECT_TRUE(std::isfinite(e.switch_point()));
    EXPECT_GT(e.switch_point(), 1.0);
  }
  EXPECT_TRUE(std::isinf(MittagLeffler(1.0).switch_point()));
  EXPECT_TRUE(std::isinf(MittagLeffler(2.0).switch_point()));
}

TEST(MittagLeffler, RejectsBadArguments) {
  EXPECT_THROW(MlArg(0.9, 1.0), domain_error);
  EXPECT_THROW(MlArg(2.1, 1.0), domain_error);
  EXPECT_THROW(MlArg(1.5, -1.0), domain_error);
  EXPECT_THROW(MlArg(1.5, INFINITY), domain_error);
  EXPECT_THROW(MlArg(NAN, 1.0), domain_error);
  EXPECT_THROW((void)ml({1.5, 1.0}, 0.0), domain_error);
}

TEST(MittagLeffler, SeriesGivesUpFarPastSwitch) {
  const MittagLeffler e(1.5);
  EXPECT_THROW((void)e.series(100.0 * e.switch_point()), non_convergence);
}
