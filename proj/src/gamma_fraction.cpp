#include "mellin/gamma_fraction.hpp"

#include <cmath>
#include <string>

#include "mellin/errors.hpp"

namespace mellin {
namespace {

template <typename T>
T dot(const std::vector<double>& a, std::span<const T> z) {
  T s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * z[i];
  return s;
}

void check_factor(const std::vector<double>& coeffs, int dim, const char* what) {
  if (static_cast<int>(coeffs.size()) != dim)
    throw InvalidArgument(std::string("GammaFraction: dimension mismatch in ") + what);
  bool nonzero = false;
  for (double c : coeffs) nonzero = nonzero || c != 0.0;
  if (!nonzero) throw InvalidArgument(std::string("GammaFraction: zero coefficient vector in ") + what);
}

}  // namespace

double GammaLinearFactor::argument(std::span<const double> z) const { return dot(coeffs, z) + offset; }

Complex GammaLinearFactor::argument(std::span<const Complex> z) const { return dot(coeffs, z) + offset; }

Complex sign_power(double exponent) {
  const double r = std::round(exponent);
  if (std::fabs(exponent - r) <= 1e-9) return std::fmod(std::fabs(r), 2.0) == 0.0 ? 1.0 : -1.0;
  return std::exp(Complex(0.0, kPi * exponent));
}

Complex GammaFraction::evaluate(std::span<const Complex> z) const {
  Complex log_sum = 0.0;
  for (const auto& g : denominator_) {
    const Complex u = g.argument(z);
    if (std::fabs(u.imag()) <= kPoleTolerance && near_nonpositive_integer(u.real(), kPoleTolerance, nullptr))
      return 0.0;
    log_sum -= log_gamma(u);
  }
  for (const auto& g : numerator_) log_sum += log_gamma(g.argument(z));
  for (const auto& p : powers_) {
    const Complex e = dot(p.exponent_coeffs, z) + p.exponent_offset;
    if (p.base == 0.0) {
      if (e == Complex(0.0)) continue;
      return e.real() > 0.0 ? Complex(0.0) : Complex(INFINITY);
    }
    log_sum += e * std::log(p.base);
  }
  Complex v = constant_ * std::exp(log_sum);
  if (sign_) {
    const Complex e = dot(sign_->exponent_coeffs, z) + sign_->exponent_offset;
    v *= std::exp(Complex(0.0, kPi) * e);
  }
  if (regular_) v *= regular_(z);
  return v;
}

Complex GammaFraction::regular_part(std::span<const double> z, const std::vector<bool>& skip_numerator,
                                    const std::vector<bool>& skip_denominator, double log_scale,
                                    int scale_sign) const {
  double log_abs = log_scale;
  int sign = scale_sign;
  for (std::size_t i = 0; i < numerator_.size(); ++i) {
    if (skip_numerator[i]) continue;
    const SignedLog g = log_abs_gamma(numerator_[i].argument(z));
    log_abs += g.log_abs;
    sign *= g.sign;
  }
  for (std::size_t i = 0; i < denominator_.size(); ++i) {
    if (skip_denominator[i]) continue;
    const SignedLog g = log_abs_gamma(denominator_[i].argument(z));
    log_abs -= g.log_abs;
    sign *= g.sign;
  }
  for (const auto& p : powers_) {
    const double e = dot(p.exponent_coeffs, z) + p.exponent_offset;
    if (p.base == 0.0) {
      // 0^0 = 1 at a residue point; the limit base -> 0+ otherwise.
      if (std::fabs(e) <= 1e-12) continue;
      return e > 0.0 ? Complex(0.0) : Complex(INFINITY);
    }
    log_abs += e * std::log(p.base);
  }

  Complex v = constant_ * (sign * std::exp(log_abs));
  if (sign_) v *= sign_power(dot(sign_->exponent_coeffs, z) + sign_->exponent_offset);
  if (regular_) {
    std::vector<Complex> zc(z.begin(), z.end());
    v *= regular_(zc);
  }
  return v;
}

GammaFraction::Builder::Builder(int dimension) {
  if (dimension != 1 && dimension != 2) throw InvalidArgument("GammaFraction: dimension must be 1 or 2");
  f_.dim_ = dimension;
}

GammaFraction::Builder& GammaFraction::Builder::numerator(std::vector<double> coeffs, double offset) {
  f_.numerator_.push_back({std::move(coeffs), offset});
  return *this;
}

GammaFraction::Builder& GammaFraction::Builder::denominator(std::vector<double> coeffs, double offset) {
  f_.denominator_.push_back({std::move(coeffs), offset});
  return *this;
}

GammaFraction::Builder& GammaFraction::Builder::power(double base, std::vector<double> exponent_coeffs,
                                                      double exponent_offset) {
  f_.powers_.push_back({base, std::move(exponent_coeffs), exponent_offset});
  return *this;
}

GammaFraction::Builder& GammaFraction::Builder::constant(Complex c) {
  f_.constant_ = c;
  return *this;
}

GammaFraction::Builder& GammaFraction::Builder::sign(std::vector<double> exponent_coeffs, double exponent_offset) {
  f_.sign_ = SignFactor{std::move(exponent_coeffs), exponent_offset};
  return *this;
}

GammaFraction::Builder& GammaFraction::Builder::regular(RegularFactor f) {
  f_.regular_ = std::move(f);
  return *this;
}

GammaFraction GammaFraction::Builder::build() const {
  const int d = f_.dim_;
  for (const auto& g : f_.numerator_) check_factor(g.coeffs, d, "numerator");
  for (const auto& g : f_.denominator_) check_factor(g.coeffs, d, "denominator");
  for (const auto& p : f_.powers_) {
    if (!(p.base >= 0.0) || !std::isfinite(p.base)) throw InvalidArgument("GammaFraction: power base must be >= 0");
    if (static_cast<int>(p.exponent_coeffs.size()) != d)
      throw InvalidArgument("GammaFraction: dimension mismatch in power factor");
  }
  if (f_.sign_ && static_cast<int>(f_.sign_->exponent_coeffs.size()) != d)
    throw InvalidArgument("GammaFraction: dimension mismatch in sign factor");
  return f_;
}

}  // namespace mellin
