#pragma once

#include "mellin/residue.hpp"

namespace mellin {

struct OptionContract {
  double spot = 0.0;
  double strike = 0.0;
  double tau = 0.0;
  double rate = 0.0;
  double sigma = 0.0;

  // Throws InvalidArgument unless S, K, tau, sigma are positive and finite.
  void validate() const;
};

// log(S/K) + r tau.
double log_moneyness(const OptionContract& c);

double bs_closed_form(const OptionContract& c);

// 1/2 (S - K e^{-r tau}).
double bs_forward_term(const OptionContract& c);

// S - (-1)^m K e^{-r tau}.
double bs_payoff_factor(int m, const OptionContract& c);

// Residue (n, m) without the payoff factor; zero when 1 + 2n - m < 0.
double bs_series_coefficient(int n, int m, const OptionContract& c);

double bs_series_term(int n, int m, const OptionContract& c);

// Forward term plus the residue lattice summed by shells n + m. Terms and the
// running sum are carried in 113-bit floating point. Trace entries hold (n, m).
ResidueSeriesResult bs_series(const OptionContract& c, const SeriesOptions& options);
ResidueSeriesResult bs_series(const OptionContract& c, double tol, int max_shells);

// |[log]| / (sigma sqrt(tau)) above which the series is reported unconverged.
inline constexpr double kFarFromMoney = 6.0;

double heat_kernel(double y, double tau, double sigma);

// Gaussian density from right-side residues of Gamma(1-t)/Gamma(1-t/2).
ResidueSeriesResult heat_kernel_mb(double y, double tau, double sigma, double tol, int max_terms = 400);

}  // namespace mellin
