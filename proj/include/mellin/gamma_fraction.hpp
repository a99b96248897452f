#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "mellin/special_functions.hpp"

namespace mellin {

// Gamma(<a|z> + b).
struct GammaLinearFactor {
  std::vector<double> coeffs;
  double offset = 0.0;

  double argument(std::span<const double> z) const;
  Complex argument(std::span<const Complex> z) const;
};

// base^(<e|z> + f), base >= 0; base 0 is taken as the limit, with 0^0 = 1.
struct PowerFactor {
  double base = 1.0;
  std::vector<double> exponent_coeffs;
  double exponent_offset = 0.0;
};

// (-1)^(<e|z> + f) on the principal branch exp(i pi (<e|z> + f)).
struct SignFactor {
  std::vector<double> exponent_coeffs;
  double exponent_offset = 0.0;
};

// Extra analytic factor with no poles in the summation region.
using RegularFactor = std::function<Complex(std::span<const Complex>)>;

class GammaFraction {
 public:
  class Builder;

  int dimension() const { return dim_; }
  const std::vector<GammaLinearFactor>& numerator() const { return numerator_; }
  const std::vector<GammaLinearFactor>& denominator() const { return denominator_; }
  const std::vector<PowerFactor>& powers() const { return powers_; }
  Complex constant() const { return constant_; }
  const std::optional<SignFactor>& sign_factor() const { return sign_; }
  bool has_regular_factor() const { return static_cast<bool>(regular_); }

  // Direct evaluation of the integrand at a complex point (zero at denominator poles).
  Complex evaluate(std::span<const Complex> z) const;

  // Product of every factor except the flagged Gamma factors, at a real point.
  // Gamma factors are accumulated in log space, together with the caller's
  // scale exp(log_scale) * scale_sign, and exponentiated once.
  Complex regular_part(std::span<const double> z, const std::vector<bool>& skip_numerator,
                       const std::vector<bool>& skip_denominator, double log_scale = 0.0,
                       int scale_sign = 1) const;

 private:
  GammaFraction() = default;

  int dim_ = 1;
  std::vector<GammaLinearFactor> numerator_;
  std::vector<GammaLinearFactor> denominator_;
  std::vector<PowerFactor> powers_;
  Complex constant_ = 1.0;
  std::optional<SignFactor> sign_;
  RegularFactor regular_;
};

class GammaFraction::Builder {
 public:
  explicit Builder(int dimension);

  Builder& numerator(std::vector<double> coeffs, double offset);
  Builder& denominator(std::vector<double> coeffs, double offset);
  Builder& power(double base, std::vector<double> exponent_coeffs, double exponent_offset = 0.0);
  Builder& constant(Complex c);
  Builder& sign(std::vector<double> exponent_coeffs, double exponent_offset = 0.0);
  Builder& regular(RegularFactor f);

  // Throws InvalidArgument on inconsistent dimensions, zero coefficient vectors or base < 0.
  GammaFraction build() const;

 private:
  GammaFraction f_;
};

// Exact +-1 when the exponent is within 1e-9 of an integer, exp(i pi e) otherwise.
Complex sign_power(double exponent);

}  // namespace mellin
