#include <gtest/gtest.h>

#include <cmath>

#include "mellin/errors.hpp"
#include "mellin/residue.hpp"

using namespace mellin;

namespace {

GammaFraction exp2d(double x1, double x2) {
  return GammaFraction::Builder(2)
      .numerator({1.0, 0.0}, 0.0)
      .numerator({0.0, 1.0}, 0.0)
      .power(x1, {-1.0, 0.0})
      .power(x2, {0.0, -1.0})
      .build();
}

constexpr Direction L = Direction::kLeft;
constexpr Direction R = Direction::kRight;

}  // namespace

TEST(CompatibleCone, WorkedIntegrands) {
  const auto c1 = compatible_cone_2d(exp2d(1.0, 1.0), Contour{{1.0, 1.0}});
  EXPECT_EQ(c1.faces[0], L);
  EXPECT_EQ(c1.faces[1], L);

  const auto bs = GammaFraction::Builder(2).numerator({-0.5, 0.0}, 0.0).numerator({0.0, 0.5}, 0.0).build();
  const auto c2 = compatible_cone_2d(bs, Contour{{-0.5, 0.5}});
  EXPECT_EQ(c2.faces[0], R);
  EXPECT_EQ(c2.faces[1], L);

  const double n = 2.0, m = 3.0;
  const auto am = GammaFraction::Builder(2)
                      .numerator({1.0, 0.0}, 0.0)
                      .numerator({-1.0, 0.0}, n)
                      .numerator({0.0, 1.0}, 0.0)
                      .numerator({0.0, -1.0}, m)
                      .denominator({0.5, 0.5}, 0.0)
                      .build();
  const auto c3 = compatible_cone_2d(am, Contour{{n / 2, m / 2}});
  EXPECT_EQ(c3.faces[0], R);
  EXPECT_EQ(c3.faces[1], R);
}

TEST(CompatibleCone, NoneExists) {
  // Delta = (2, 2) forces (LEFT, LEFT), where the Gamma(z1 + z2) family crosses both faces.
  const auto f = GammaFraction::Builder(2)
                     .numerator({1.0, 0.0}, 0.0)
                     .numerator({0.0, 1.0}, 0.0)
                     .numerator({1.0, 1.0}, 0.0)
                     .build();
  EXPECT_THROW(compatible_cone_2d(f, Contour{{1.0, 1.0}}), NoCompatibleConeError);
}

TEST(Grothendieck, ScaledProduct) {
  for (double a : {0.5, 2.0, -1.5})
    for (double b : {1.0, -0.5, 3.0}) {
      const auto f = GammaFraction::Builder(2).numerator({a, 0.0}, 0.0).numerator({0.0, b}, 0.0).build();
      for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) {
          const Complex r = grothendieck_residue_2d(f, {-n / a, -m / b});
          const double expect = std::pow(-1.0, n + m) / (a * b * std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
          EXPECT_NEAR(r.real(), expect, 1e-14) << a << " " << b << " " << n << " " << m;
        }
    }
}

TEST(Grothendieck, TaylorCoefficients) {
  const double x1 = 0.7, x2 = 1.9;
  for (int n = 0; n < 5; ++n)
    for (int m = 0; m < 5; ++m) {
      const Complex r = grothendieck_residue_2d(exp2d(x1, x2), {-double(n), -double(m)});
      const double expect = std::pow(-x1, n) * std::pow(-x2, m) / (std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
      EXPECT_NEAR(r.real(), expect, 1e-14);
    }
}

TEST(Grothendieck, SwapInvariance) {
  const auto f = GammaFraction::Builder(2)
                     .numerator({1.0, 0.5}, 0.0)
                     .numerator({0.0, 2.0}, 1.0)
                     .power(1.3, {-1.0, 0.0})
                     .power(0.6, {0.0, -1.0})
                     .build();
  const auto g = GammaFraction::Builder(2)
                     .numerator({0.5, 1.0}, 0.0)
                     .numerator({2.0, 0.0}, 1.0)
                     .power(1.3, {0.0, -1.0})
                     .power(0.6, {-1.0, 0.0})
                     .build();
  for (int k1 = 0; k1 < 3; ++k1)
    for (int k2 = 0; k2 < 3; ++k2) {
      const double z2 = (-k2 - 1.0) / 2.0;
      const double z1 = -k1 - 0.5 * z2;
      EXPECT_EQ(grothendieck_residue_2d(f, {z1, z2}), grothendieck_residue_2d(g, {z2, z1}));
    }
}

TEST(Grothendieck, CancelledByDenominator) {
  const auto f = GammaFraction::Builder(2)
                     .numerator({1.0, 0.0}, 0.0)
                     .numerator({0.0, 1.0}, 0.0)
                     .denominator({0.5, 0.0}, 0.0)
                     .build();
  EXPECT_EQ(grothendieck_residue_2d(f, {-2.0, -1.0}), Complex(0.0));
  EXPECT_NE(grothendieck_residue_2d(f, {-1.0, -1.0}), Complex(0.0));
}

TEST(Grothendieck, SameLineCancellation) {
  // Gamma(z1) / Gamma(z1 / 2) keeps only odd z1 poles; at even ones the ratio is finite.
  const auto f = GammaFraction::Builder(2)
                     .numerator({1.0, 0.0}, 0.0)
                     .numerator({0.0, 1.0}, 0.0)
                     .numerator({-1.0, 0.0}, 0.0 + 10.0)
                     .denominator({0.5, 0.0}, 0.0)
                     .build();
  // At z1 = -2 the line z1 = -2 carries Gamma(z1) and 1/Gamma(z1/2); only z2 stays singular.
  EXPECT_EQ(grothendieck_residue_2d(f, {-2.0, -1.0}), Complex(0.0));
}

TEST(Grothendieck, NonTransverse) {
  const auto f = GammaFraction::Builder(2)
                     .numerator({1.0, 1.0}, 0.0)
                     .numerator({1.0, 1.0}, 1.0)
                     .build();
  EXPECT_THROW(grothendieck_residue_2d(f, {-0.5, -0.5}), UnsupportedPoleError);
}

TEST(SumResidues2d, Exponential) {
  const Contour c{{1.0, 1.0}};
  auto f = exp2d(1.0, 1.0);
  auto r = sum_residues_2d(f, c, compatible_cone_2d(f, c), 1e-15, 200);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value.real(), 0.1353352832366127, 1e-14);
  f = exp2d(0.5, 2.0);
  r = sum_residues_2d(f, c, compatible_cone_2d(f, c), 1e-15, 200);
  EXPECT_NEAR(r.value.real(), std::exp(-2.5), 1e-14);
}

TEST(SumResidues2d, ExponentialGrid) {
  const Contour c{{1.0, 1.0}};
  for (double x1 = 0.1; x1 <= 3.0 + 1e-12; x1 += 0.29)
    for (double x2 = 0.1; x2 <= 3.0 + 1e-12; x2 += 0.29) {
      const auto f = exp2d(x1, x2);
      const auto r = sum_residues_2d(f, c, Cone2d{{L, L}}, 1e-16, 200);
      EXPECT_NEAR(r.value.real(), std::exp(-(x1 + x2)), 1e-10) << x1 << " " << x2;
    }
}

TEST(SumResidues2d, EmptyLattice) {
  const auto f = exp2d(1.0, 1.0);
  const auto r = sum_residues_2d(f, Contour{{1.0, 1.0}}, Cone2d{{R, R}}, 1e-12, 50);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.value, Complex(0.0));
  EXPECT_EQ(r.terms_used, 0);
}

TEST(SumResidues2d, ConvergedStableUnderMoreShells) {
  const Contour c{{1.0, 1.0}};
  const auto f = exp2d(2.0, 1.5);
  const double tol = 1e-10;
  const auto a = sum_residues_2d(f, c, Cone2d{{L, L}}, tol, 100);
  const auto b = sum_residues_2d(f, c, Cone2d{{L, L}}, tol, 200);
  ASSERT_TRUE(a.converged);
  EXPECT_LT(std::abs(a.value - b.value), tol);
}
