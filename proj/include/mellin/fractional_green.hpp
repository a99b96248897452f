#pragma once

#include "mellin/residue.hpp"

namespace mellin {

struct FractionalDiffusionParams {
  double alpha = 2.0;    // space order, (0, 2]
  double gamma_t = 1.0;  // time order, (0, 1]
  double theta = 0.0;    // skew, |theta| <= min(alpha, 2 - alpha)
  double mu = 1.0;       // scale, > 0

  void validate() const;
};

// Spatial scale (mu t^gamma)^(1/alpha).
double green_scale(const FractionalDiffusionParams& p, double t);

// Integrand in t1 for x > 0, with argument ratio X = x / scale.
GammaFraction green_fraction(const FractionalDiffusionParams& p, double x, double X);

// RIGHT when gamma < alpha; for gamma = alpha, RIGHT if X < 1 and LEFT otherwise.
Direction green_direction(const FractionalDiffusionParams& p, double X);

// Contour abscissa inside 0 < c1 < min(alpha, 1).
double green_contour(const FractionalDiffusionParams& p);

// Density at x != 0. Negative x uses g_theta(-x) = g_{-theta}(x).
ResidueSeriesResult green_fractional(double x, double t, const FractionalDiffusionParams& p, double tol,
                                     int max_terms);

// Limit x -> 0 from the t1 = 1 residue; DomainError when the series closes to the left
// or a contributing pole lies in (0, 1).
double green_at_origin(double t, const FractionalDiffusionParams& p);

struct QuadratureGrid {
  double lo;
  double hi;
  int intervals;
};

struct NormalizationResult {
  double integral = 0.0;
  double min_density = 0.0;
  bool all_converged = true;
};

// Trapezoidal integral of the density over the grid.
NormalizationResult green_normalization_check(const FractionalDiffusionParams& p, double t,
                                              const QuadratureGrid& grid, double tol = 1e-14,
                                              int max_terms = 2000);

// True only for the Gaussian and the maximally right-light stable shapes.
bool has_exponential_moment(const FractionalDiffusionParams& p);

// -ln of the trapezoidal integral of e^y g(y, 1). Throws DivergenceError when the
// exponential moment does not exist.
double esscher_mu_numeric(const FractionalDiffusionParams& p, const QuadratureGrid& grid, double tol = 1e-14,
                          int max_terms = 2000);

}  // namespace mellin
