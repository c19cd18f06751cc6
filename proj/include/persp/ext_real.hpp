#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace persp {

/// Extended real value in [-inf, +inf]. NaN is never representable.
///
/// Functions in Gamma_0 only ever produce finite values or +inf; -inf is
/// allowed so that raw scaling functions such as y -> y^q - iota_I(y) can be
/// evaluated outside their domain.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : value_(v) {  // NOLINT: implicit from double is intended
    if (std::isnan(v)) throw std::domain_error("ExtReal cannot hold NaN");
  }

  static ExtReal pos_inf() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal neg_inf() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(value_); }
  bool is_pos_inf() const { return value_ == std::numeric_limits<double>::infinity(); }
  bool is_neg_inf() const { return value_ == -std::numeric_limits<double>::infinity(); }

  /// Raw IEEE value; infinities are the genuine IEEE infinities.
  double value() const { return value_; }

  /// Finite value or throws.
  double finite() const {
    if (!is_finite()) throw std::domain_error("ExtReal: expected a finite value");
    return value_;
  }

  friend auto operator<=>(const ExtReal&, const ExtReal&) = default;

 private:
  double value_ = 0.0;
};

/// a + b with the convex-analysis convention (+inf) + a = +inf for a > -inf.
/// The sum (+inf) + (-inf) is undefined and throws.
ExtReal operator+(ExtReal a, ExtReal b);
ExtReal operator-(ExtReal a);
ExtReal operator-(ExtReal a, ExtReal b);

/// t * a for a real t >= 0, with 0 * (+inf) = 0 (the convention of t*f at t = 0
/// is handled by callers; this is plain scaling of values).
ExtReal scale(double t, ExtReal a);

std::string to_string(ExtReal v);

}  // namespace persp
