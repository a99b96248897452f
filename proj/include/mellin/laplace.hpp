#pragma once

#include <functional>
#include <vector>

#include "mellin/special_functions.hpp"

namespace mellin {

struct LaplaceSymbol {
  std::function<Complex(Complex)> image;
  double abscissa = 0.0;  // image analytic for Re p > abscissa
};

struct InversionOptions {
  int talbot_nodes = 24;
  int dehoog_terms = 20;              // 2M+1 evaluations on the vertical line
  double dehoog_period_factor = 2.0;  // period T = factor * x
  double dehoog_aliasing = 1e-16;     // sets the abscissa -ln(aliasing) / (2T)
  double tolerance = 1e-9;            // the two methods must agree to 100x this
  int threads = 1;                    // node evaluation; reduction order is fixed
};

struct InversionResult {
  double talbot = 0.0;
  double trapezoid = 0.0;

  double value() const { return talbot; }
  // |talbot - trapezoid| / max(1, |talbot|).
  double discrepancy() const;
};

// Fixed-Talbot contour (Abate-Valko).
double talbot_inverse(const LaplaceSymbol& sym, double x, const InversionOptions& opt = {});

// Vertical-line trapezoid accelerated by the de Hoog-Knight-Stokes continued fraction.
double trapezoid_inverse(const LaplaceSymbol& sym, double x, const InversionOptions& opt = {});

// Both methods; UnreliableInversionError when they disagree beyond 100 * tolerance.
InversionResult inverse_laplace(const LaplaceSymbol& sym, double x, const InversionOptions& opt = {});

// x^(nu-1) / Gamma(nu), the inverse transform of p^-nu.
double f_power(double x, double nu);

enum class LaguerreConvention {
  kDerivative,   // L_n = d^n/dx^n [e^{-alpha x} x^nu]
  kAlternating,  // (-1)^n times the above
};

// l_n(x, nu) = sum_j coeffs[j] x^(nu - j), j = 0..n.
struct LaguerreCoefficients {
  int n = 0;
  double alpha = 0.0;
  double nu = 0.0;
  std::vector<double> coeffs;

  double evaluate(double x) const;
};

LaguerreCoefficients laguerre_coefficients(int n, double alpha, double nu,
                                           LaguerreConvention conv = LaguerreConvention::kDerivative);

double laguerre_gen(int n, double alpha, double x, double nu,
                    LaguerreConvention conv = LaguerreConvention::kDerivative);

// Inverse transform of p^n / (p + alpha)^nu at x: e^{-alpha x} l_n(x, nu - 1) / Gamma(nu).
double f_shifted(int n, double alpha, double nu, double x,
                 LaguerreConvention conv = LaguerreConvention::kDerivative);

}  // namespace mellin
