#include "mellin/residue.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

constexpr double kSingularTol = 1e-9;

struct Singular {
  std::size_t index;
  long k;
};

bool singular_at(double u, long* k) {
  return near_nonpositive_integer(u, kSingularTol * std::max(1.0, std::fabs(u)), k);
}

double log_factorial(long k) { return log_abs_gamma(static_cast<double>(k) + 1.0).log_abs; }

int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

int sgn(double x) { return x < 0.0 ? -1 : 1; }

void classify(const std::vector<GammaLinearFactor>& factors, std::span<const double> z, std::vector<bool>& flags,
              std::vector<Singular>& out) {
  flags.assign(factors.size(), false);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    long k = 0;
    if (singular_at(factors[i].argument(z), &k)) {
      flags[i] = true;
      out.push_back({i, k});
    }
  }
}

bool same_location(double a, double b) { return std::fabs(a - b) <= kSingularTol * std::max(1.0, std::fabs(a)); }

void check_contour(const GammaFraction& f, const Contour& contour) {
  if (static_cast<int>(contour.gamma.size()) != f.dimension())
    throw InvalidArgument("contour dimension does not match the integrand");
  for (const auto& g : f.numerator())
    if (!(g.argument(contour.gamma) > 0.0))
      throw InvalidArgument("contour is not inside the fundamental strip of the integrand");
}

struct Family1d {
  double a;
  double b;
  long k = 0;
  double location() const { return (-static_cast<double>(k) - b) / a; }
};

std::vector<Family1d> families_1d(const GammaFraction& f, Direction direction) {
  std::vector<Family1d> out;
  for (const auto& g : f.numerator()) {
    const double a = g.coeffs[0];
    if ((direction == Direction::kLeft && a > 0.0) || (direction == Direction::kRight && a < 0.0))
      out.push_back({a, g.offset});
  }
  return out;
}

// Pops the next pole location, merging coincident family members.
double next_location(std::vector<Family1d>& fam, double origin) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < fam.size(); ++i)
    if (std::fabs(fam[i].location() - origin) < std::fabs(fam[best].location() - origin)) best = i;
  const double z = fam[best].location();
  for (auto& x : fam)
    if (same_location(x.location(), z)) ++x.k;
  return z;
}

int pole_order(const GammaFraction& f, double pole) {
  const double z[1] = {pole};
  std::vector<bool> flags;
  std::vector<Singular> num, den;
  classify(f.numerator(), z, flags, num);
  classify(f.denominator(), z, flags, den);
  return static_cast<int>(num.size()) - static_cast<int>(den.size());
}

}  // namespace

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kLeft:
      return "left";
    case Direction::kRight:
      return "right";
    case Direction::kBoth:
      return "both";
  }
  return "?";
}

bool StopRule::update(double magnitude, double sum_abs, int step) {
  small_run_ = (magnitude < tol_ * std::max(1.0, sum_abs)) ? small_run_ + 1 : 0;
  if (step > 0 && magnitude > previous_) {
    ++growth_run_;
  } else {
    growth_run_ = 0;
  }
  previous_ = magnitude;
  if (step >= warmup_ && growth_run_ >= kGrowthRun) diverged_ = true;
  return converged() || diverged_;
}

void CompensatedSum::add_part(double& s, double& c, double x) {
  const double t = s + x;
  if (std::fabs(s) >= std::fabs(x)) {
    c += (s - t) + x;
  } else {
    c += (x - t) + s;
  }
  s = t;
}

void CompensatedSum::add(Complex x) {
  add_part(re_, cre_, x.real());
  add_part(im_, cim_, x.imag());
}

std::vector<double> delta_vector(const GammaFraction& f) {
  std::vector<double> delta(f.dimension(), 0.0);
  for (const auto& g : f.numerator())
    for (int i = 0; i < f.dimension(); ++i) delta[i] += g.coeffs[i];
  for (const auto& g : f.denominator())
    for (int i = 0; i < f.dimension(); ++i) delta[i] -= g.coeffs[i];
  return delta;
}

Direction select_half_plane(double delta, const Contour& contour) {
  if (contour.gamma.size() != 1) throw InvalidArgument("select_half_plane: one-dimensional contour required");
  if (delta > 0.0) return Direction::kLeft;
  if (delta < 0.0) return Direction::kRight;
  return Direction::kBoth;
}

std::vector<Pole1d> enumerate_poles_1d(const GammaFraction& f, Direction direction, int max_index) {
  if (f.dimension() != 1) throw InvalidArgument("enumerate_poles_1d: one-dimensional integrand required");
  if (direction == Direction::kBoth) throw InvalidArgument("enumerate_poles_1d: choose LEFT or RIGHT");
  std::vector<double> locations;
  for (const auto& fam : families_1d(f, direction))
    for (long k = 0; k <= max_index; ++k) locations.push_back(Family1d{fam.a, fam.b, k}.location());
  if (direction == Direction::kLeft) {
    std::sort(locations.begin(), locations.end(), std::greater<>());
  } else {
    std::sort(locations.begin(), locations.end());
  }

  std::vector<Pole1d> poles;
  std::vector<bool> flags;
  for (double z : locations) {
    if (!poles.empty() && same_location(poles.back().location, z)) continue;
    std::vector<Singular> num, den;
    const double zz[1] = {z};
    classify(f.numerator(), zz, flags, num);
    classify(f.denominator(), zz, flags, den);
    const int order = static_cast<int>(num.size()) - static_cast<int>(den.size());
    if (order >= 2) throw UnsupportedPoleError("enumerate_poles_1d: coincident numerator poles (order >= 2)");
    poles.push_back({z, std::max(order, 0)});
  }
  return poles;
}

Complex residue_1d(const GammaFraction& f, double pole) {
  if (f.dimension() != 1) throw InvalidArgument("residue_1d: one-dimensional integrand required");
  const double z[1] = {pole};
  std::vector<bool> num_flags, den_flags;
  std::vector<Singular> num, den;
  classify(f.numerator(), z, num_flags, num);
  classify(f.denominator(), z, den_flags, den);
  const int order = static_cast<int>(num.size()) - static_cast<int>(den.size());
  if (order <= 0) return 0.0;
  if (order >= 2) throw UnsupportedPoleError("residue_1d: pole of order >= 2");

  // Leading Laurent coefficients: Gamma(a z + b) ~ c_k / (a (z - z0)), 1/Gamma ~ a (z - z0) (-1)^k k!.
  double log_scale = 0.0;
  int sign = 1;
  for (const auto& s : num) {
    const double a = f.numerator()[s.index].coeffs[0];
    log_scale += -log_factorial(s.k) - std::log(std::fabs(a));
    sign *= parity_sign(s.k) * sgn(a);
  }
  for (const auto& s : den) {
    const double a = f.denominator()[s.index].coeffs[0];
    log_scale += log_factorial(s.k) + std::log(std::fabs(a));
    sign *= parity_sign(s.k) * sgn(a);
  }
  return f.regular_part(z, num_flags, den_flags, log_scale, sign);
}

ResidueSeriesResult sum_residues_1d(const GammaFraction& f, const Contour& contour, Direction direction,
                                    const SeriesOptions& options) {
  if (f.dimension() != 1) throw InvalidArgument("sum_residues_1d: one-dimensional integrand required");
  if (direction == Direction::kBoth) throw InvalidArgument("sum_residues_1d: choose LEFT or RIGHT");
  check_contour(f, contour);

  ResidueSeriesResult result;
  std::vector<Family1d> fam = families_1d(f, direction);
  if (fam.empty()) {
    result.converged = true;
    return result;
  }
  const double origin = contour.gamma[0];
  const double orientation = (direction == Direction::kLeft) ? 1.0 : -1.0;
  CompensatedSum sum;
  StopRule rule(options.tol, options.divergence_warmup);
  const long visit_cap = 8L * options.max_terms + 64;
  int index = 0;
  for (long visited = 0; result.terms_used < options.max_terms && visited < visit_cap; ++visited, ++index) {
    const double z = next_location(fam, origin);
    if (pole_order(f, z) <= 0) continue;
    const Complex r = orientation * residue_1d(f, z);
    sum.add(r);
    const double mag = std::abs(r);
    result.last_shell_magnitude = mag;
    if (options.record_trace) result.trace.push_back({{index, 0}, {z, 0.0}, r, sum.value()});
    const bool stop = rule.update(mag, std::abs(sum.value()), result.terms_used);
    ++result.terms_used;
    if (stop) break;
  }
  result.value = sum.value();
  result.converged = rule.converged() && !rule.diverged();
  result.diverged = rule.diverged();
  return result;
}

ResidueSeriesResult sum_residues_1d(const GammaFraction& f, const Contour& contour, Direction direction,
                                    double tol, int max_terms) {
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_terms;
  return sum_residues_1d(f, contour, direction, o);
}

Cone2d compatible_cone_2d(const GammaFraction& f, const Contour& contour) {
  if (f.dimension() != 2) throw InvalidArgument("compatible_cone_2d: two-dimensional integrand required");
  check_contour(f, contour);
  const std::vector<double> delta = delta_vector(f);
  constexpr Direction R = Direction::kRight, L = Direction::kLeft;
  const std::array<Cone2d, 4> candidates = {Cone2d{{R, R}}, Cone2d{{R, L}}, Cone2d{{L, R}}, Cone2d{{L, L}}};
  for (const auto& cone : candidates) {
    const double d[2] = {cone.faces[0] == R ? 1.0 : -1.0, cone.faces[1] == R ? 1.0 : -1.0};
    bool ok = delta[0] * d[0] <= 0.0 && delta[1] * d[1] <= 0.0;
    for (const auto& g : f.numerator()) {
      const int hits = (g.coeffs[0] * d[0] < 0.0) + (g.coeffs[1] * d[1] < 0.0);
      ok = ok && hits <= 1;
    }
    if (ok) return cone;
  }
  throw NoCompatibleConeError("no compatible quadrant cone; supply a custom cone");
}

Complex grothendieck_residue_2d(const GammaFraction& f, std::array<double, 2> point) {
  if (f.dimension() != 2) throw InvalidArgument("grothendieck_residue_2d: two-dimensional integrand required");
  std::vector<bool> num_flags, den_flags;
  std::vector<Singular> num, den;
  classify(f.numerator(), point, num_flags, num);
  classify(f.denominator(), point, den_flags, den);

  double log_scale = 0.0;
  int sign = 1;
  // A denominator divisor through the point cancels a numerator divisor on the same line.
  for (const auto& d : den) {
    const auto& ad = f.denominator()[d.index].coeffs;
    auto it = std::find_if(num.begin(), num.end(), [&](const Singular& s) {
      const auto& an = f.numerator()[s.index].coeffs;
      const double cross = an[0] * ad[1] - an[1] * ad[0];
      return std::fabs(cross) <= 1e-12 * (std::fabs(an[0]) + std::fabs(an[1])) * (std::fabs(ad[0]) + std::fabs(ad[1]));
    });
    if (it == num.end()) return 0.0;
    const auto& an = f.numerator()[it->index].coeffs;
    const double lambda = (an[0] * ad[0] + an[1] * ad[1]) / (ad[0] * ad[0] + ad[1] * ad[1]);
    log_scale += -log_factorial(it->k) + log_factorial(d.k) - std::log(std::fabs(lambda));
    sign *= parity_sign(it->k) * parity_sign(d.k) * sgn(lambda);
    num.erase(it);
  }
  if (num.size() < 2) return 0.0;
  if (num.size() > 2) throw UnsupportedPoleError("grothendieck_residue_2d: more than two divisors through the point");

  const auto* r0 = &f.numerator()[num[0].index].coeffs;
  const auto* r1 = &f.numerator()[num[1].index].coeffs;
  if (std::fabs((*r0)[0] * (*r1)[1]) < std::fabs((*r0)[1] * (*r1)[0])) std::swap(r0, r1);
  const double det = (*r0)[0] * (*r1)[1] - (*r0)[1] * (*r1)[0];
  if (std::fabs(det) <= 1e-12) throw UnsupportedPoleError("grothendieck_residue_2d: non-transverse intersection");
  log_scale += -log_factorial(num[0].k) - log_factorial(num[1].k) - std::log(std::fabs(det));
  sign *= parity_sign(num[0].k) * parity_sign(num[1].k) * sgn(det);
  return f.regular_part(point, num_flags, den_flags, log_scale, sign);
}

ResidueSeriesResult sum_residues_2d(const GammaFraction& f, const Contour& contour, const Cone2d& cone,
                                    const SeriesOptions& options) {
  if (f.dimension() != 2) throw InvalidArgument("sum_residues_2d: two-dimensional integrand required");
  check_contour(f, contour);
  const double d[2] = {cone.faces[0] == Direction::kRight ? 1.0 : -1.0,
                       cone.faces[1] == Direction::kRight ? 1.0 : -1.0};
  const double orientation = d[0] * d[1];  // (-1)^(number of RIGHT faces)
  const double& g0 = contour.gamma[0];
  const double& g1 = contour.gamma[1];

  std::vector<std::size_t> relevant;
  for (std::size_t i = 0; i < f.numerator().size(); ++i) {
    const auto& a = f.numerator()[i].coeffs;
    const int hits = (a[0] * d[0] < 0.0) + (a[1] * d[1] < 0.0);
    if (hits > 1) throw NoCompatibleConeError("sum_residues_2d: a divisor family crosses both faces of the cone");
    if (hits == 1) relevant.push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t p = 0; p < relevant.size(); ++p)
    for (std::size_t q = p + 1; q < relevant.size(); ++q) {
      const auto& a = f.numerator()[relevant[p]].coeffs;
      const auto& b = f.numerator()[relevant[q]].coeffs;
      if (std::fabs(a[0] * b[1] - a[1] * b[0]) > 1e-12) pairs.emplace_back(relevant[p], relevant[q]);
    }

  ResidueSeriesResult result;
  if (pairs.empty()) {
    result.converged = true;
    return result;
  }

  CompensatedSum sum;
  StopRule rule(options.tol, options.divergence_warmup);
  std::set<std::pair<long long, long long>> seen;
  int contributing_shells = 0;
  for (int shell = 0; shell < options.max_terms; ++shell) {
    double shell_mag = 0.0;
    bool contributed = false;
    for (const auto& [p, q] : pairs) {
      const auto& fp = f.numerator()[p];
      const auto& fq = f.numerator()[q];
      const double det = fp.coeffs[0] * fq.coeffs[1] - fp.coeffs[1] * fq.coeffs[0];
      for (int kp = 0; kp <= shell; ++kp) {
        const int kq = shell - kp;
        const double rp = -kp - fp.offset, rq = -kq - fq.offset;
        const std::array<double, 2> z = {(rp * fq.coeffs[1] - fp.coeffs[1] * rq) / det,
                                         (fp.coeffs[0] * rq - rp * fq.coeffs[0]) / det};
        if (!(d[0] * (z[0] - g0) > 0.0 && d[1] * (z[1] - g1) > 0.0)) continue;
        const auto key = std::make_pair(std::llround(z[0] * 1e9), std::llround(z[1] * 1e9));
        if (!seen.insert(key).second) continue;
        const Complex r = orientation * grothendieck_residue_2d(f, z);
        if (r == Complex(0.0)) continue;
        sum.add(r);
        shell_mag += std::abs(r);
        contributed = true;
        ++result.terms_used;
        if (options.record_trace) result.trace.push_back({{kp, kq}, z, r, sum.value()});
      }
    }
    if (!contributed) continue;
    result.last_shell_magnitude = shell_mag;
    if (rule.update(shell_mag, std::abs(sum.value()), contributing_shells++)) break;
  }
  result.value = sum.value();
  result.converged = rule.converged() && !rule.diverged();
  result.diverged = rule.diverged();
  return result;
}

ResidueSeriesResult sum_residues_2d(const GammaFraction& f, const Contour& contour, const Cone2d& cone,
                                    double tol, int max_shells) {
  SeriesOptions o;
  o.tol = tol;
  o.max_terms = max_shells;
  return sum_residues_2d(f, contour, cone, o);
}

}  // namespace mellin
