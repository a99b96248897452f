#include "mellin/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

// Image values at the nodes, computed in contiguous blocks per thread.
std::vector<Complex> evaluate_nodes(const std::function<Complex(Complex)>& F, const std::vector<Complex>& p,
                                    int threads) {
  std::vector<Complex> out(p.size());
  const int nt = std::clamp(threads, 1, static_cast<int>(p.size()));
  if (nt == 1) {
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = F(p[i]);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (p.size() + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t lo = t * block, hi = std::min(p.size(), lo + block);
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = F(p[i]);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

double shift_of(const LaplaceSymbol& sym) { return std::max(0.0, sym.abscissa); }

void check_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("inverse Laplace: x must be positive");
}

}  // namespace

double InversionResult::discrepancy() const {
  return std::fabs(talbot - trapezoid) / std::max(1.0, std::fabs(talbot));
}

double talbot_inverse(const LaplaceSymbol& sym, double x, const InversionOptions& opt) {
  check_x(x);
  const int M = opt.talbot_nodes;
  const double s0 = shift_of(sym);
  const double r = 2.0 * M / (5.0 * x);
  std::vector<Complex> nodes(M);
  nodes[0] = r;
  for (int k = 1; k < M; ++k) {
    const double th = k * kPi / M;
    const double cot = 1.0 / std::tan(th);
    nodes[k] = r * th * Complex(cot, 1.0);
  }
  std::vector<Complex> shifted(nodes);
  for (auto& p : shifted) p += s0;
  const std::vector<Complex> F = evaluate_nodes(sym.image, shifted, opt.threads);

  double s = 0.5 * (F[0] * std::exp(r * x)).real();
  for (int k = 1; k < M; ++k) {
    const double th = k * kPi / M;
    const double cot = 1.0 / std::tan(th);
    const double sigma = th + (th * cot - 1.0) * cot;
    s += (std::exp(x * nodes[k]) * F[k] * Complex(1.0, sigma)).real();
  }
  return std::exp(s0 * x) * r / M * s;
}

double trapezoid_inverse(const LaplaceSymbol& sym, double x, const InversionOptions& opt) {
  check_x(x);
  const int M = opt.dehoog_terms;
  const double T = opt.dehoog_period_factor * x;
  const double g = shift_of(sym) - 0.5 * std::log(opt.dehoog_aliasing) / T;

  std::vector<Complex> nodes(2 * M + 1);
  for (int i = 0; i <= 2 * M; ++i) nodes[i] = Complex(g, i * kPi / T);
  std::vector<Complex> a = evaluate_nodes(sym.image, nodes, opt.threads);
  a[0] *= 0.5;

  // Quotient-difference table.
  std::vector<std::vector<Complex>> e(M + 1, std::vector<Complex>(2 * M + 1)), q(M + 1, std::vector<Complex>(2 * M + 1));
  for (int i = 0; i < 2 * M; ++i) q[1][i] = a[i + 1] / a[i];
  for (int r = 1; r <= M; ++r) {
    for (int i = 0; i <= 2 * (M - r); ++i) e[r][i] = q[r][i + 1] - q[r][i] + e[r - 1][i + 1];
    if (r < M)
      for (int i = 0; i < 2 * (M - r); ++i) q[r + 1][i] = q[r][i + 1] * e[r][i + 1] / e[r][i];
  }
  std::vector<Complex> d(2 * M + 1);
  d[0] = a[0];
  for (int m = 1; m <= M; ++m) {
    d[2 * m - 1] = -q[m][0];
    d[2 * m] = -e[m][0];
  }

  // Continued fraction with the remainder estimate for the last step.
  const Complex z = std::exp(Complex(0.0, kPi * x / T));
  std::vector<Complex> A(2 * M + 2), B(2 * M + 2);
  A[0] = 0.0;
  A[1] = d[0];
  B[0] = 1.0;
  B[1] = 1.0;
  for (int n = 2; n <= 2 * M; ++n) {
    A[n] = A[n - 1] + d[n - 1] * z * A[n - 2];
    B[n] = B[n - 1] + d[n - 1] * z * B[n - 2];
  }
  const Complex h = 0.5 * (1.0 + z * (d[2 * M - 1] - d[2 * M]));
  const Complex R = -h * (1.0 - std::sqrt(1.0 + z * d[2 * M] / (h * h)));
  A[2 * M + 1] = A[2 * M] + R * A[2 * M - 1];
  B[2 * M + 1] = B[2 * M] + R * B[2 * M - 1];
  return std::exp(g * x) / T * (A[2 * M + 1] / B[2 * M + 1]).real();
}

InversionResult inverse_laplace(const LaplaceSymbol& sym, double x, const InversionOptions& opt) {
  InversionResult r;
  r.talbot = talbot_inverse(sym, x, opt);
  r.trapezoid = trapezoid_inverse(sym, x, opt);
  if (!std::isfinite(r.talbot) || !std::isfinite(r.trapezoid) || r.discrepancy() > 100.0 * opt.tolerance)
    throw UnreliableInversionError("inverse Laplace: Talbot and trapezoid results disagree");
  return r;
}

double f_power(double x, double nu) {
  if (!(x > 0.0)) throw InvalidArgument("f_power: x must be positive");
  const SignedLog g = log_abs_gamma(nu);
  return g.sign * std::exp((nu - 1.0) * std::log(x) - g.log_abs);
}

double LaguerreCoefficients::evaluate(double x) const {
  // x^(nu - n) * sum_j coeffs[j] x^(n - j), Horner in x.
  double s = 0.0;
  for (int j = 0; j <= n; ++j) s = s * x + coeffs[j];
  return s * std::pow(x, nu - n);
}

LaguerreCoefficients laguerre_coefficients(int n, double alpha, double nu, LaguerreConvention conv) {
  if (n < 0) throw InvalidArgument("laguerre: n must be nonnegative");
  LaguerreCoefficients l{n, alpha, nu, {1.0}};
  // d/dx [e^{-alpha x} sum_j c_j x^(nu-j)] = e^{-alpha x} sum_j (-alpha c_j + (nu-j+1) c_{j-1}) x^(nu-j).
  for (int step = 0; step < n; ++step) {
    std::vector<double> next(step + 2, 0.0);
    for (int j = 0; j <= step + 1; ++j) {
      if (j <= step) next[j] -= alpha * l.coeffs[j];
      if (j >= 1) next[j] += (nu - j + 1) * l.coeffs[j - 1];
    }
    l.coeffs = std::move(next);
  }
  if (conv == LaguerreConvention::kAlternating && n % 2 == 1)
    for (double& c : l.coeffs) c = -c;
  return l;
}

double laguerre_gen(int n, double alpha, double x, double nu, LaguerreConvention conv) {
  return laguerre_coefficients(n, alpha, nu, conv).evaluate(x);
}

double f_shifted(int n, double alpha, double nu, double x, LaguerreConvention conv) {
  if (!(x > 0.0)) throw InvalidArgument("f_shifted: x must be positive");
  if (!(nu > 0.0)) throw InvalidArgument("f_shifted: nu must be positive");
  const SignedLog g = log_abs_gamma(nu);
  return std::exp(-alpha * x - g.log_abs) * g.sign * laguerre_gen(n, alpha, x, nu - 1.0, conv);
}

}  // namespace mellin
