#pragma once

#include "mellin/gamma_fraction.hpp"
#include "mellin/laplace.hpp"
#include "mellin/residue.hpp"

namespace mellin {

struct AmericanConstants {
  double gamma_c = 0.0;  // 2r / sigma^2
  double a = 0.0;        // (1 + gamma_c) / 2
  double b = 0.0;        // (1 - gamma_c) / 2

  static AmericanConstants from_market(double rate, double sigma);
};

// e^{p tau} (p + gamma)^m / [p (b + q)^n (b - q)^m], q = sqrt(p + a^2), inverted at tau.
LaplaceSymbol american_kernel_symbol(int n, int m, const AmericanConstants& c, bool running_integral = true);

InversionResult american_kernel_oracle(int n, int m, double tau, const AmericanConstants& c,
                                       const InversionOptions& opt = {});

enum class KernelForm {
  kResidue,  // residues of the two-dimensional Mellin-Barnes form of the Laplace integral
  kPrinted,  // the closed series with the Laguerre factor, taken literally
};

// Two-dimensional integrand in (s1, s2); contour at (n/2, m/2).
GammaFraction american_kernel_fraction(int n, int m, double tau, const AmericanConstants& c);

ResidueSeriesResult american_kernel_series(int n, int m, double tau, const AmericanConstants& c, double tol,
                                           int max_shells, KernelForm form = KernelForm::kResidue);

// Limit of the kernel as tau -> 0+ (initial value theorem); DivergenceError when m > n.
double american_kernel_initial_value(int n, int m, const AmericanConstants& c);

// (1/p) exp{-log[1 - (p + gamma) / (gamma (b - q))] / (b + q)}.
LaplaceSymbol exercise_boundary_symbol(const AmericanConstants& c);

// Optimal exercise price at time to expiry tau, in units of the strike.
// BranchCrossingError if the log argument leaves the right half-plane on either contour.
InversionResult exercise_boundary(double tau, double rate, double sigma, const InversionOptions& opt = {});

}  // namespace mellin
