#include "mellin/special_functions.hpp"

#include <cmath>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

// Lanczos coefficients, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551353999,  12.507343278686904814458936853,
    -0.13857109526572011689554706,        9.984369578019570859563e-6,
    1.50563273514931155834e-7};

constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kLogPi = 1.14472988584940017414;

Complex log_gamma_right(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  const Complex t = z + kLanczosG + 0.5;
  return kLogSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z) on some branch; stable for large |Im z| and near integers.
Complex log_sin_pi(Complex z) {
  const double n = std::round(z.real());
  const Complex w = kPi * Complex(z.real() - n, z.imag());
  const Complex parity = (std::fmod(std::fabs(n), 2.0) == 1.0) ? Complex(0.0, kPi) : Complex(0.0);
  if (std::fabs(w.imag()) < 10.0) return std::log(std::sin(w)) + parity;
  const Complex i(0.0, 1.0);
  if (w.imag() > 0.0)
    return -i * w + std::log(Complex(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * w)) + parity;
  return i * w + std::log(Complex(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * w)) + parity;
}

double wrap_phase(double p) {
  double r = std::remainder(p, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

bool near_nonpositive_integer(double x, double tol, long* k) {
  const double r = std::round(x);
  if (r > 0.0 || std::fabs(x - r) > tol) return false;
  if (k) *k = static_cast<long>(-r);
  return true;
}

Complex log_gamma(Complex z) {
  if (std::fabs(z.imag()) <= kPoleTolerance && near_nonpositive_integer(z.real(), kPoleTolerance, nullptr))
    throw PoleError("log_gamma: argument at a pole of Gamma");
  Complex v;
  if (z.real() < 0.5) {
    v = kLogPi - log_sin_pi(z) - log_gamma_right(1.0 - z);
  } else {
    v = log_gamma_right(z);
  }
  return {v.real(), wrap_phase(v.imag())};
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

SignedLog log_abs_gamma(double x) {
  if (near_nonpositive_integer(x, kPoleTolerance, nullptr))
    throw PoleError("log_abs_gamma: argument at a pole of Gamma");
  int sign = 1;
  const double v = ::lgamma_r(x, &sign);
  return {v, sign < 0 ? -1 : 1};
}

double rgamma(double x) {
  if (near_nonpositive_integer(x, kPoleTolerance, nullptr)) return 0.0;
  const SignedLog g = log_abs_gamma(x);
  return g.sign * std::exp(-g.log_abs);
}

double gamma_pole_residue(int n) {
  if (n < 0) throw InvalidArgument("gamma_pole_residue: n must be nonnegative");
  const double r = std::exp(-log_abs_gamma(n + 1.0).log_abs);
  return (n % 2 == 0) ? r : -r;
}

double beta_pole_residue(long n) { return (n % 2 == 0) ? 1.0 : -1.0; }

double normal_cdf(double u) { return 0.5 * std::erfc(-u / std::sqrt(2.0)); }

double erf_series_head(double x, int terms) {
  double sum = 0.0;
  double power = x;
  double fact = 1.0;
  for (int k = 0; k < terms; ++k) {
    const double term = power / (fact * (2 * k + 1));
    sum += (k % 2 == 0) ? term : -term;
    power *= x * x;
    fact *= (k + 1);
  }
  return 2.0 / std::sqrt(kPi) * sum;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

}  // namespace mellin
