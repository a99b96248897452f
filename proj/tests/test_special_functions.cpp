#include <gtest/gtest.h>

#include <cmath>

#include "mellin/errors.hpp"
#include "mellin/special_functions.hpp"

using namespace mellin;

TEST(LogGamma, KnownValues) {
  EXPECT_NEAR(std::abs(log_gamma(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(log_gamma(0.5).real(), std::log(std::sqrt(kPi)), 1e-14);
  EXPECT_NEAR(log_gamma(4.0).real(), std::log(6.0), 1e-14);
  EXPECT_NEAR(log_gamma(4.0).imag(), 0.0, 1e-15);
}

TEST(LogGamma, MatchesRealGammaOnAxis) {
  for (double x : {-3.7, -2.5, -0.3, 0.1, 0.7, 1.5, 3.2, 10.5, 40.25}) {
    const Complex g = gamma(Complex(x, 0.0));
    EXPECT_NEAR(g.real() / std::tgamma(x), 1.0, 1e-13) << x;
    EXPECT_NEAR(g.imag(), 0.0, 1e-13 * std::fabs(g.real())) << x;
  }
}

TEST(LogGamma, PrincipalBranch) {
  for (double x = -20.35; x < 20.0; x += 1.7)
    for (double y = -50.0; y <= 50.0; y += 6.25) {
      const Complex v = log_gamma(Complex(x, y));
      EXPECT_GT(v.imag(), -kPi - 1e-12);
      EXPECT_LE(v.imag(), kPi + 1e-12);
    }
}

TEST(LogGamma, PoleError) {
  EXPECT_THROW(log_gamma(0.0), PoleError);
  EXPECT_THROW(log_gamma(-3.0), PoleError);
  EXPECT_THROW(log_gamma(Complex(-2.0 + 1e-13, 0.0)), PoleError);
  EXPECT_NO_THROW(log_gamma(Complex(-2.0, 1e-6)));
}

TEST(LogGamma, Reflection) {
  for (double x = -4.35; x < 4.5; x += 0.4)
    for (double y : {-3.0, -0.5, 0.0, 0.25, 2.0}) {
      const Complex z(x, y);
      const Complex lhs = gamma(z) * gamma(1.0 - z);
      const Complex rhs = kPi / std::sin(kPi * z);
      EXPECT_LT(std::abs(lhs / rhs - 1.0), 1e-12) << z;
    }
}

TEST(LogGamma, Recurrence) {
  for (double x = -6.3; x < 12.0; x += 0.9)
    for (double y : {-7.0, -1.0, 0.3, 4.0, 15.0}) {
      const Complex z(x, y);
      const Complex lhs = gamma(z + 1.0);
      const Complex rhs = z * gamma(z);
      EXPECT_LT(std::abs(lhs / rhs - 1.0), 1e-12) << z;
    }
}

TEST(PoleResidues, Gamma) {
  EXPECT_EQ(gamma_pole_residue(0), 1.0);
  EXPECT_EQ(gamma_pole_residue(1), -1.0);
  EXPECT_NEAR(gamma_pole_residue(3), -1.0 / 6.0, 1e-16);
  EXPECT_THROW(gamma_pole_residue(-1), InvalidArgument);
}

TEST(PoleResidues, GammaMatchesLimit) {
  for (int n = 0; n <= 6; ++n) {
    const double eps = 1e-7;
    const Complex z(-n + eps, 0.0);
    const double limit = (eps * gamma(z)).real();
    EXPECT_NEAR(limit, gamma_pole_residue(n), 1e-8 + 1e-6 * std::fabs(gamma_pole_residue(n))) << n;
  }
}

TEST(PoleResidues, Beta) {
  EXPECT_EQ(beta_pole_residue(0), 1.0);
  EXPECT_EQ(beta_pole_residue(2), 1.0);
  EXPECT_EQ(beta_pole_residue(-1), -1.0);
  // Residue of Gamma(z)Gamma(1-z) at z = -n, estimated numerically.
  for (long n : {-3L, -1L, 0L, 2L, 5L}) {
    const double eps = 1e-7;
    const Complex z(-n + eps, 0.0);
    EXPECT_NEAR((eps * gamma(z) * gamma(1.0 - z)).real(), beta_pole_residue(n), 1e-6);
  }
}

TEST(NormalCdf, Values) {
  EXPECT_EQ(normal_cdf(0.0), 0.5);
  EXPECT_EQ(normal_cdf(40.0), 1.0);
  EXPECT_NEAR(normal_cdf(-1.0), 0.15865525393145705, 1e-16);
  EXPECT_NEAR(normal_cdf(1.96), 0.97500210485177952, 1e-15);
  EXPECT_NEAR(normal_cdf(-10.0) / 7.6198530241604696e-24, 1.0, 1e-13);
}

TEST(NormalCdf, ErfSeriesHead) {
  for (double x = -0.1; x <= 0.1; x += 0.01) EXPECT_NEAR(erf_series_head(x, 4), std::erf(x), 1e-10) << x;
}

TEST(RealGamma, SignAndReciprocal) {
  EXPECT_EQ(log_abs_gamma(-0.5).sign, -1);
  EXPECT_EQ(log_abs_gamma(-1.5).sign, 1);
  EXPECT_EQ(rgamma(-2.0), 0.0);
  EXPECT_NEAR(rgamma(5.0), 1.0 / 24.0, 1e-17);
  EXPECT_THROW(log_abs_gamma(-4.0), PoleError);
}
