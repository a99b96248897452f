#include "mellin/american.hpp"

#include <algorithm>
#include <cmath>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

void check_orders(int n, int m) {
  if (n < 1 || m < 1) throw InvalidArgument("american kernel: n and m must be positive integers");
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("american kernel: tau must be positive");
}

// Gamma(nu) G(tau; nu) with
// G(tau; nu) = sum_j C(m, j) (-b^2)^(m-j) tau^(nu-j) e^{-x} sum_k x^k / Gamma(nu - j + k + 1), x = a^2 tau.
double kernel_regular(double nu, int m, double tau, const AmericanConstants& c) {
  const double x = c.a * c.a * tau;
  const double log_x = std::log(x);
  const double log_tau = std::log(tau);
  const SignedLog g_nu = log_abs_gamma(nu);
  double total = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double weight = binomial(m, j) * std::pow(-c.b * c.b, m - j);
    if (weight == 0.0) continue;
    const double mu = nu - j;
    double inner = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const double arg = mu + k + 1.0;
      if (near_nonpositive_integer(arg, 1e-12, nullptr)) continue;
      const SignedLog g = log_abs_gamma(arg);
      const double t = g_nu.sign * g.sign * std::exp(k * log_x + g_nu.log_abs - g.log_abs + mu * log_tau - x);
      inner += t;
      if (k > x && std::fabs(t) <= 1e-18 * std::fabs(inner)) break;
    }
    total += weight * inner;
  }
  return total;
}

int parity(long k) { return (k % 2 == 0) ? 1 : -1; }

ResidueSeriesResult printed_series(int n, int m, double tau, const AmericanConstants& c, double tol,
                                   int max_shells) {
  const double log_pre = std::log(c.gamma_c) - c.a * c.a * tau - log_abs_gamma(n).log_abs - log_abs_gamma(m).log_abs;
  CompensatedSum sum;
  StopRule rule(tol, 10);
  ResidueSeriesResult result;
  for (int K = 0; K < max_shells; ++K) {
    double shell = 0.0;
    for (int k1 = 0; k1 <= K; ++k1) {
      const int k2 = K - k1;
      const double nu = 0.5 * (k1 + n + k2 + m);
      const double log_abs = log_pre + log_abs_gamma(k1 + n).log_abs + log_abs_gamma(k2 + m).log_abs -
                             log_abs_gamma(k1 + 1).log_abs - log_abs_gamma(k2 + 1).log_abs -
                             log_abs_gamma(nu).log_abs;
      const double bk = (c.b == 0.0) ? (K == 0 ? 1.0 : 0.0) : std::pow(c.b, K);
      const double t = parity(k1 - m - 1) * bk * std::exp(log_abs) * laguerre_gen(m - 1, c.b * c.b, tau, nu - 1.0);
      if (t == 0.0) continue;
      sum.add(t);
      shell += std::fabs(t);
      ++result.terms_used;
    }
    result.last_shell_magnitude = shell;
    if (rule.update(shell, std::abs(sum.value()), K)) break;
  }
  result.value = sum.value();
  result.converged = rule.converged() && !rule.diverged();
  result.diverged = rule.diverged();
  return result;
}

}  // namespace

AmericanConstants AmericanConstants::from_market(double rate, double sigma) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw InvalidArgument("american: rate must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("american: sigma must be positive");
  AmericanConstants c;
  c.gamma_c = 2.0 * rate / (sigma * sigma);
  c.a = 0.5 * (1.0 + c.gamma_c);
  c.b = 0.5 * (1.0 - c.gamma_c);
  return c;
}

LaplaceSymbol american_kernel_symbol(int n, int m, const AmericanConstants& c, bool running_integral) {
  check_orders(n, m);
  // (p + gamma) = (q - b)(q + b), so the image reduces to (-1)^m (b + q)^(m - n) / p without the
  // removable 0/0 at q = b.
  const double sign = parity(m);
  return {[=](Complex p) {
            const Complex q = std::sqrt(p + c.a * c.a);
            const Complex v = sign * std::pow(c.b + q, m - n);
            return running_integral ? v / p : v;
          },
          0.0};
}

InversionResult american_kernel_oracle(int n, int m, double tau, const AmericanConstants& c,
                                       const InversionOptions& opt) {
  check_tau(tau);
  return inverse_laplace(american_kernel_symbol(n, m, c), tau, opt);
}

GammaFraction american_kernel_fraction(int n, int m, double tau, const AmericanConstants& c) {
  check_orders(n, m);
  check_tau(tau);
  GammaFraction::Builder builder(2);
  builder.numerator({1.0, 0.0}, 0.0)
      .numerator({-1.0, 0.0}, n)
      .numerator({0.0, 1.0}, 0.0)
      .numerator({0.0, -1.0}, m)
      .denominator({0.5, 0.5}, 0.0)
      .constant(std::exp(-log_abs_gamma(n).log_abs - log_abs_gamma(m).log_abs));
  // b^(k1+k2) (-1)^(m+k1) at s = (n+k1, m+k2), written as |b|^(s1+s2-n-m) times a sign power.
  if (c.b != 0.0) builder.power(std::fabs(c.b), {1.0, 1.0}, -static_cast<double>(n + m));
  if (c.b >= 0.0) {
    builder.sign({0.0, -1.0});
  } else {
    builder.sign({1.0, 0.0}, -static_cast<double>(n + m));
  }
  builder.regular([=](std::span<const Complex> s) {
    return Complex(kernel_regular(0.5 * (s[0].real() + s[1].real()), m, tau, c));
  });
  return builder.build();
}

ResidueSeriesResult american_kernel_series(int n, int m, double tau, const AmericanConstants& c, double tol,
                                           int max_shells, KernelForm form) {
  check_orders(n, m);
  check_tau(tau);
  if (form == KernelForm::kPrinted) return printed_series(n, m, tau, c, tol, max_shells);

  const GammaFraction f = american_kernel_fraction(n, m, tau, c);
  if (c.b == 0.0) {
    // 0^(k1+k2): only the corner residue survives.
    ResidueSeriesResult r;
    r.value = grothendieck_residue_2d(f, {static_cast<double>(n), static_cast<double>(m)});
    r.terms_used = 1;
    r.last_shell_magnitude = std::abs(r.value);
    r.converged = true;
    return r;
  }
  const Contour contour{{0.5 * n, 0.5 * m}};
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_shells;
  o.divergence_warmup = 10 + static_cast<int>(std::ceil(std::min(4.0 * c.b * c.b * tau, 1e6)));
  return sum_residues_2d(f, contour, compatible_cone_2d(f, contour), o);
}

double american_kernel_initial_value(int n, int m, const AmericanConstants& c) {
  check_orders(n, m);
  (void)c;
  if (n > m) return 0.0;
  if (n == m) return parity(m);
  throw DivergenceError("american kernel: image grows like p^((m-n)/2) - 1; no finite limit at tau = 0");
}

LaplaceSymbol exercise_boundary_symbol(const AmericanConstants& c) {
  return {[=](Complex p) {
            const Complex q = std::sqrt(p + c.a * c.a);
            // 1 - (p + gamma)/(gamma (b - q)) = 1 + (b + q)/gamma since p + gamma = (q - b)(q + b).
            const Complex w = 1.0 + (c.b + q) / c.gamma_c;
            if (!(w.real() > 0.0) || !std::isfinite(w.real()) || !std::isfinite(w.imag()))
              throw BranchCrossingError("exercise boundary: log argument left the principal branch on the contour");
            return std::exp(-std::log(w) / (c.b + q)) / p;
          },
          0.0};
}

InversionResult exercise_boundary(double tau, double rate, double sigma, const InversionOptions& opt) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("exercise boundary: tau must be positive");
  return inverse_laplace(exercise_boundary_symbol(AmericanConstants::from_market(rate, sigma)), tau, opt);
}

}  // namespace mellin
