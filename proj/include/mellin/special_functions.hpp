#pragma once

#include <complex>

namespace mellin {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2Pi = 2.50662827463100050242;

// Absolute distance from a nonpositive integer below which Gamma is treated as singular.
inline constexpr double kPoleTolerance = 1e-12;

// Principal branch of log Gamma(z). Imaginary part lies in (-pi, pi].
// Throws PoleError at z = 0, -1, -2, ...
Complex log_gamma(Complex z);

Complex gamma(Complex z);

struct SignedLog {
  double log_abs;
  int sign;  // +1 or -1
};

// log|Gamma(x)| and sign of Gamma(x) for real x; thread-safe.
SignedLog log_abs_gamma(double x);

// 1/Gamma(x), exactly 0 at the poles.
double rgamma(double x);

// If x is within tol of an integer k <= 0, returns true and stores k.
bool near_nonpositive_integer(double x, double tol, long* k);

// Residue of Gamma at z = -n: (-1)^n / n!.
double gamma_pole_residue(int n);

// Residue of Gamma(z)Gamma(1-z) at z = -n: (-1)^n, for every integer n.
double beta_pole_residue(long n);

double normal_cdf(double u);

// Leading terms of 2/sqrt(pi) (x - x^3/3 + x^5/10 - ...).
double erf_series_head(double x, int terms);

double binomial(int n, int k);

}  // namespace mellin
