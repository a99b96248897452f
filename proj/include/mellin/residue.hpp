#pragma once

#include <array>
#include <vector>

#include "mellin/gamma_fraction.hpp"

namespace mellin {

enum class Direction { kLeft, kRight, kBoth };

const char* to_string(Direction d);

struct Contour {
  std::vector<double> gamma;
};

struct Pole1d {
  double location;
  int order;  // 0 when cancelled by the denominator
};

struct Cone2d {
  std::array<Direction, 2> faces;  // each kLeft or kRight
};

struct SeriesTerm {
  std::array<int, 2> index{};  // pole index (1-D) or lattice indices (2-D)
  std::array<double, 2> location{};
  Complex residue;
  Complex partial_sum;
};

struct ResidueSeriesResult {
  Complex value;
  int terms_used = 0;
  double last_shell_magnitude = 0.0;
  bool converged = false;
  bool diverged = false;
  std::vector<SeriesTerm> trace;  // filled only on request
};

struct SeriesOptions {
  double tol = 1e-12;
  int max_terms = 400;  // contributing poles (1-D) or shells (2-D)
  int divergence_warmup = 10;
  bool record_trace = false;
};

// Neumaier compensated sum of complex values.
class CompensatedSum {
 public:
  void add(Complex x);
  Complex value() const { return {re_ + cre_, im_ + cim_}; }

 private:
  static void add_part(double& s, double& c, double x);
  double re_ = 0.0, cre_ = 0.0, im_ = 0.0, cim_ = 0.0;
};

// Stop after 3 consecutive small terms/shells (each below tol * max(1, |sum|));
// divergence after 5 consecutive increases once step >= warmup.
class StopRule {
 public:
  StopRule(double tol, int warmup) : tol_(tol), warmup_(warmup) {}

  // Returns true when summation should stop.
  bool update(double magnitude, double sum_abs, int step);
  bool converged() const { return small_run_ >= kSmallRun; }
  bool diverged() const { return diverged_; }

 private:
  static constexpr int kSmallRun = 3;
  static constexpr int kGrowthRun = 5;
  double tol_;
  int warmup_;
  int small_run_ = 0;
  int growth_run_ = 0;
  double previous_ = 0.0;
  bool diverged_ = false;
};

std::vector<double> delta_vector(const GammaFraction& f);

Direction select_half_plane(double delta, const Contour& contour);

std::vector<Pole1d> enumerate_poles_1d(const GammaFraction& f, Direction direction, int max_index);

// Residue of the integrand at a real pole. Cancelled poles give 0.
Complex residue_1d(const GammaFraction& f, double pole);

// Value of the Mellin-Barnes integral (1/2 pi i) \int_{gamma + iR} f dz, closed on one side.
ResidueSeriesResult sum_residues_1d(const GammaFraction& f, const Contour& contour, Direction direction,
                                    const SeriesOptions& options);
ResidueSeriesResult sum_residues_1d(const GammaFraction& f, const Contour& contour, Direction direction,
                                    double tol, int max_terms);

Cone2d compatible_cone_2d(const GammaFraction& f, const Contour& contour);

// c1 c2 / det(J) times the regular factors, rows of J ordered so that row i goes with variable i.
Complex grothendieck_residue_2d(const GammaFraction& f, std::array<double, 2> point);

ResidueSeriesResult sum_residues_2d(const GammaFraction& f, const Contour& contour, const Cone2d& cone,
                                    const SeriesOptions& options);
ResidueSeriesResult sum_residues_2d(const GammaFraction& f, const Contour& contour, const Cone2d& cone,
                                    double tol, int max_shells);

}  // namespace mellin
