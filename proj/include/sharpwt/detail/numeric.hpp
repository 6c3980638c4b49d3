#pragma once

#include <cmath>

namespace sharpwt::detail {

/// (a + d)^k - a^k for a >= 0, d > 0, without cancellation when d << a.
inline double pow_increment(double a, double d, double k) {
  if (a == 0.0) return std::pow(d, k);
  if (d <= a) return std::pow(a, k) * std::expm1(k * std::log1p(d / a));
  return std::pow(a + d, k) - std::pow(a, k);
}

/// Integral of s^e over [a, a + d] for a >= 0, d > 0.
inline double power_integral(double a, double d, double e) {
  const double k = e + 1.0;
  if (k == 0.0) return std::log1p(d / a);
  return pow_increment(a, d, k) / k;
}

/// Average of s^e over [a, a + d] for a >= 0, d > 0, scaled so that it does not
/// underflow or overflow when the integral would.
inline double power_average(double a, double d, double e) {
  const double k = e + 1.0;
  if (a == 0.0) return std::pow(d, e) / k;
  if (d <= a) {
    const double t = d / a;
    const double g = k == 0.0 ? std::log1p(t) : std::expm1(k * std::log1p(t)) / k;
    return std::pow(a, e) * g / t;
  }
  const double b = a + d;
  const double t = d / b;
  const double l = std::log(a / b);
  const double g = k == 0.0 ? -l : -std::expm1(k * l) / k;
  return std::pow(b, e) * g / t;
}

/// x^e with shortcuts for the exponents the characteristic kernels use most.
class FastPow {
 public:
  explicit FastPow(double e) : e_(e) {
    if (e == 1.0) mode_ = Mode::One;
    else if (e == 2.0) mode_ = Mode::Two;
    else if (e == 0.5) mode_ = Mode::Half;
    else if (e == 0.0) mode_ = Mode::Zero;
    else mode_ = Mode::General;
  }
  double operator()(double x) const {
    switch (mode_) {
      case Mode::One: return x;
      case Mode::Two: return x * x;
      case Mode::Half: return std::sqrt(x);
      case Mode::Zero: return 1.0;
      case Mode::General: break;
    }
    return std::pow(x, e_);
  }
  double exponent() const { return e_; }

 private:
  enum class Mode { One, Two, Half, Zero, General };
  double e_;
  Mode mode_;
};

}  // namespace sharpwt::detail
