#include "mellin/fractional_green.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

double skew_coeff(const FractionalDiffusionParams& p) { return (p.alpha - p.theta) / (2.0 * p.alpha); }

double density_at(double x, double t, const FractionalDiffusionParams& p, double tol, int max_terms,
                  bool* converged) {
  if (x == 0.0) {
    *converged = true;
    return green_at_origin(t, p);
  }
  const auto r = green_fractional(x, t, p, tol, max_terms);
  *converged = r.converged;
  return r.value.real();
}

std::vector<double> grid_points(const QuadratureGrid& g) {
  if (!(g.hi > g.lo) || g.intervals < 1) throw InvalidArgument("quadrature grid must have hi > lo and intervals >= 1");
  std::vector<double> x(g.intervals + 1);
  const double h = (g.hi - g.lo) / g.intervals;
  for (int i = 0; i <= g.intervals; ++i) x[i] = g.lo + i * h;
  // Snap a point within rounding of the origin onto it.
  for (double& v : x)
    if (std::fabs(v) < 1e-12 * h) v = 0.0;
  return x;
}

double trapezoid(const std::vector<double>& f, double h) {
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * h;
}

}  // namespace

void FractionalDiffusionParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw InvalidArgument("alpha must lie in (0, 2]");
  if (!(gamma_t > 0.0 && gamma_t <= 1.0)) throw InvalidArgument("gamma_t must lie in (0, 1]");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw InvalidArgument("mu must be positive");
  if (!(std::fabs(theta) <= std::min(alpha, 2.0 - alpha) + 1e-15))
    throw InvalidArgument("theta must satisfy |theta| <= min(alpha, 2 - alpha)");
}

double green_scale(const FractionalDiffusionParams& p, double t) {
  return std::pow(p.mu * std::pow(t, p.gamma_t), 1.0 / p.alpha);
}

GammaFraction green_fraction(const FractionalDiffusionParams& p, double x, double X) {
  const double a = p.alpha;
  const double s = skew_coeff(p);
  return GammaFraction::Builder(1)
      .numerator({1.0 / a}, 0.0)
      .numerator({-1.0 / a}, 1.0)
      .numerator({-1.0}, 1.0)
      .denominator({-p.gamma_t / a}, 1.0)
      .denominator({s}, 0.0)
      .denominator({-s}, 1.0)
      .power(X, {1.0})
      .constant(1.0 / (a * x))
      .build();
}

Direction green_direction(const FractionalDiffusionParams& p, double X) {
  const double delta = p.gamma_t / p.alpha - 1.0;
  const Direction d = select_half_plane(delta, Contour{{green_contour(p)}});
  if (d != Direction::kBoth) return d;
  return X < 1.0 ? Direction::kRight : Direction::kLeft;
}

double green_contour(const FractionalDiffusionParams& p) { return 0.5 * std::min(p.alpha, 1.0); }

ResidueSeriesResult green_fractional(double x, double t, const FractionalDiffusionParams& p, double tol,
                                     int max_terms) {
  p.validate();
  if (!(t > 0.0)) throw InvalidArgument("green_fractional: t must be positive");
  if (x == 0.0) throw DomainError("green_fractional: x = 0 is outside the domain (prefactor 1/(alpha x))");
  if (x < 0.0) {
    FractionalDiffusionParams q = p;
    q.theta = -p.theta;
    return green_fractional(-x, t, q, tol, max_terms);
  }
  if (skew_coeff(p) == 0.0) {
    // 1/Gamma(0) kills the integrand: no mass on this half-line.
    ResidueSeriesResult r;
    r.converged = true;
    return r;
  }
  const double X = x / green_scale(p, t);
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_terms;
  // Terms may grow for about X^2 poles before the Gamma ratio takes over.
  o.divergence_warmup = std::max(o.divergence_warmup, 10 + static_cast<int>(std::ceil(std::min(X * X, 1e6))));
  return sum_residues_1d(green_fraction(p, x, X), Contour{{green_contour(p)}}, green_direction(p, X), o);
}

double green_at_origin(double t, const FractionalDiffusionParams& p) {
  p.validate();
  if (skew_coeff(p) == 0.0) throw DomainError("green_at_origin: one-sided density");
  const double delta = p.gamma_t / p.alpha - 1.0;
  if (delta > 0.0) throw DomainError("green_at_origin: series closes to the left; no limit at x = 0");
  const GammaFraction f = green_fraction(p, 1.0, 1.0);
  for (const auto& pole : enumerate_poles_1d(f, Direction::kRight, 4)) {
    if (pole.order == 0) continue;
    if (pole.location < 1.0 - 1e-9) throw DomainError("green_at_origin: density is singular at x = 0");
    if (pole.location > 1.0 + 1e-9) break;
    // g(x) ~ -Res_{t1=1}[f] X / x with the 1/(alpha x) prefactor at x = 1 and X = 1.
    return -residue_1d(f, 1.0).real() / green_scale(p, t);
  }
  return 0.0;
}

NormalizationResult green_normalization_check(const FractionalDiffusionParams& p, double t,
                                              const QuadratureGrid& grid, double tol, int max_terms) {
  const std::vector<double> x = grid_points(grid);
  std::vector<double> g(x.size());
  NormalizationResult out;
  out.min_density = INFINITY;
  for (std::size_t i = 0; i < x.size(); ++i) {
    bool ok = false;
    g[i] = density_at(x[i], t, p, tol, max_terms, &ok);
    out.all_converged = out.all_converged && ok;
    out.min_density = std::min(out.min_density, g[i]);
  }
  out.integral = trapezoid(g, (grid.hi - grid.lo) / grid.intervals);
  return out;
}

bool has_exponential_moment(const FractionalDiffusionParams& p) {
  constexpr double eps = 1e-12;
  if (p.alpha == 2.0) return true;
  if (p.alpha > 1.0) return std::fabs(p.theta - (p.alpha - 2.0)) <= eps;
  if (p.alpha < 1.0) return std::fabs(p.theta + p.alpha) <= eps;
  return false;
}

double esscher_mu_numeric(const FractionalDiffusionParams& p, const QuadratureGrid& grid, double tol,
                          int max_terms) {
  p.validate();
  if (!has_exponential_moment(p))
    throw DivergenceError("exponential moment does not exist: the right tail is heavy for these parameters");
  const std::vector<double> y = grid_points(grid);
  std::vector<double> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    bool ok = false;
    w[i] = std::exp(y[i]) * density_at(y[i], 1.0, p, tol, max_terms, &ok);
    if (!ok) throw DivergenceError("esscher_mu_numeric: density series did not converge on the grid");
  }
  // The weighted density must decay over the last tenth of the right side.
  const std::size_t tail = std::max<std::size_t>(1, y.size() / 10);
  if (w.back() > w[w.size() - 1 - tail])
    throw DivergenceError("exponential moment does not exist: integrand grows on the right tail");
  return -std::log(trapezoid(w, (grid.hi - grid.lo) / grid.intervals));
}

}  // namespace mellin
