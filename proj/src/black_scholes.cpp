#include "mellin/black_scholes.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <vector>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double discounted_strike(const OptionContract& c) { return c.strike * std::exp(-c.rate * c.tau); }

double total_vol(const OptionContract& c) { return c.sigma * std::sqrt(c.tau); }

// Coefficients of row n for m = 0 .. 2n+1, without payoff factor and 1/sqrt(2 pi).
class RowTable {
 public:
  RowTable(double log_m, double vol) : L_(log_m), v2_(Quad(vol) * Quad(vol)), c0_(Quad(vol) / 2) {}

  const Quad& at(int n, int m) {
    while (static_cast<int>(rows_.size()) <= n) extend();
    return rows_[n][m];
  }

 private:
  void extend() {
    const int n = static_cast<int>(rows_.size());
    if (n > 0) c0_ *= -Quad(2 * n - 1) * v2_ / Quad(8 * n * (2 * n + 1));
    std::vector<Quad> row(2 * n + 2);
    row[2 * n + 1] = c0_;
    for (int m = 2 * n + 1; m > 0; --m) {
      const int k_new = 2 * n + 2 - m;
      row[m - 1] = row[m] * Quad(2 * m) * L_ / (Quad(k_new) * v2_);
    }
    rows_.push_back(std::move(row));
  }

  Quad L_;
  Quad v2_;
  Quad c0_;
  std::vector<std::vector<Quad>> rows_;
};

}  // namespace

void OptionContract::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(spot)) throw InvalidArgument("spot must be positive");
  if (!positive(strike)) throw InvalidArgument("strike must be positive");
  if (!positive(tau)) throw InvalidArgument("tau must be positive");
  if (!positive(sigma)) throw InvalidArgument("sigma must be positive");
  if (!std::isfinite(rate)) throw InvalidArgument("rate must be finite");
}

double log_moneyness(const OptionContract& c) { return std::log(c.spot / c.strike) + c.rate * c.tau; }

double bs_closed_form(const OptionContract& c) {
  c.validate();
  const double v = total_vol(c);
  const double L = log_moneyness(c);
  const double d_plus = L / v + v / 2;
  const double d_minus = L / v - v / 2;
  return c.spot * normal_cdf(d_plus) - discounted_strike(c) * normal_cdf(d_minus);
}

double bs_forward_term(const OptionContract& c) { return 0.5 * (c.spot - discounted_strike(c)); }

double bs_payoff_factor(int m, const OptionContract& c) {
  return (m % 2 == 0) ? c.spot - discounted_strike(c) : c.spot + discounted_strike(c);
}

double bs_series_coefficient(int n, int m, const OptionContract& c) {
  const int k = 1 + 2 * n - m;
  if (n < 0 || m < 0 || k < 0) return 0.0;
  const double L = log_moneyness(c);
  if (L == 0.0 && k > 0) return 0.0;
  const double v = total_vol(c);
  const double log_mag = log_abs_gamma(2.0 * n + 1).log_abs - (n + m) * std::log(2.0) -
                         log_abs_gamma(n + 1.0).log_abs - log_abs_gamma(m + 1.0).log_abs -
                         log_abs_gamma(k + 1.0).log_abs + (k > 0 ? k * std::log(std::fabs(L)) : 0.0) +
                         (-1.0 + 2.0 * (m - n)) * std::log(v);
  int sign = (n % 2 == 0) ? 1 : -1;
  if (L < 0.0 && k % 2 == 1) sign = -sign;
  return sign * kInvSqrt2Pi * std::exp(log_mag);
}

double bs_series_term(int n, int m, const OptionContract& c) {
  return bs_series_coefficient(n, m, c) * bs_payoff_factor(m, c);
}

ResidueSeriesResult bs_series(const OptionContract& c, const SeriesOptions& options) {
  c.validate();
  const double v = total_vol(c);
  const double L = log_moneyness(c);
  const double ratio = std::fabs(L) / v;
  const Quad F_even = Quad(c.spot) - Quad(discounted_strike(c));
  const Quad F_odd = Quad(c.spot) + Quad(discounted_strike(c));

  // Terms grow until roughly shell ([log]/sigma sqrt(tau))^2 before factorial damping wins.
  const int warmup = std::max(options.divergence_warmup, static_cast<int>(std::ceil(ratio * ratio)));
  StopRule rule(options.tol, warmup);
  RowTable rows(L, v);
  Quad sum = F_even / 2;
  ResidueSeriesResult result;
  int contributing = 0;
  for (int s = 0; s < options.max_terms; ++s) {
    Quad shell = 0;
    double shell_mag = 0.0;
    // m = s - n needs 1 + 2n - m >= 0, i.e. 3n >= s - 1.
    for (int n = std::max(0, (s - 1 + 2) / 3); n <= s; ++n) {
      const int m = s - n;
      if (m > 2 * n + 1) continue;
      const Quad term = rows.at(n, m) * ((m % 2 == 0) ? F_even : F_odd) * Quad(kInvSqrt2Pi);
      if (term == 0) continue;
      shell += term;
      shell_mag += std::fabs(static_cast<double>(term));
      ++result.terms_used;
      if (options.record_trace) {
        const double t = static_cast<double>(term);
        result.trace.push_back({{n, m}, {0.0, 0.0}, t, static_cast<double>(sum + shell)});
      }
    }
    if (shell_mag == 0.0) continue;
    sum += shell;
    result.last_shell_magnitude = shell_mag;
    if (rule.update(shell_mag, std::fabs(static_cast<double>(sum)), contributing++)) break;
  }
  result.value = static_cast<double>(sum);
  result.diverged = rule.diverged();
  result.converged = rule.converged() && !rule.diverged() && ratio <= kFarFromMoney;
  return result;
}

ResidueSeriesResult bs_series(const OptionContract& c, double tol, int max_shells) {
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_shells;
  return bs_series(c, o);
}

double heat_kernel(double y, double tau, double sigma) {
  if (!(tau > 0.0) || !(sigma > 0.0)) throw InvalidArgument("heat_kernel: tau and sigma must be positive");
  const double var = sigma * sigma * tau;
  return std::exp(-y * y / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
}

ResidueSeriesResult heat_kernel_mb(double y, double tau, double sigma, double tol, int max_terms) {
  if (!(tau > 0.0) || !(sigma > 0.0)) throw InvalidArgument("heat_kernel_mb: tau and sigma must be positive");
  if (y == 0.0) throw DomainError("heat_kernel_mb: y = 0 is outside the domain (prefactor 1/y)");
  const double ay = std::fabs(y);
  const double X = std::sqrt(2.0) * ay / (sigma * std::sqrt(tau));
  const GammaFraction f = GammaFraction::Builder(1)
                              .numerator({-1.0}, 1.0)
                              .denominator({-0.5}, 1.0)
                              .power(X, {1.0})
                              .constant(1.0 / (2.0 * ay))
                              .build();
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_terms;
  o.divergence_warmup = std::max(o.divergence_warmup, static_cast<int>(std::ceil(X * X)));
  return sum_residues_1d(f, Contour{{0.5}}, Direction::kRight, o);
}

}  // namespace mellin
