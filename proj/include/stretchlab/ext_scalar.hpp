#pragma once

// Signed scalar stored as sign + natural log of magnitude.
//
// Band thicknesses decay like b^{e^t} and boundary abscissae grow like
// e^{e^t w}, both far outside native double range at modest t, so every
// geometric quantity is carried in this form. Only logarithmic-size
// results (heights, log-ratios) are converted back to plain doubles.

#include <cmath>
#include <limits>
#include <numbers>

#include "stretchlab/errors.hpp"

namespace stretchlab {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Mixed-sign additions closer than this in logmag are refused; the
// caller is expected to restructure the formula instead (see
// cylinder height, which uses the determinant identity for exactly
// this reason).
inline constexpr double kCancelTol = 1e-12;

struct ExtScalar {
  int sign = 0;           // -1, 0, +1
  double logmag = kNegInf;  // ln |value|; -inf iff sign == 0

  constexpr ExtScalar() = default;
  constexpr ExtScalar(int s, double lm) : sign(s), logmag(lm) {
    if (sign == 0) logmag = kNegInf;
  }

  static ExtScalar zero() { return {}; }
  static ExtScalar one() { return {+1, 0.0}; }

  static ExtScalar from_real(double x) {
    if (x == 0.0) return {};
    return {x > 0.0 ? +1 : -1, std::log(std::fabs(x))};
  }

  // Positive value given directly by its natural log.
  static ExtScalar from_log(double lm, int s = +1) { return {s, lm}; }

  bool is_zero() const { return sign == 0; }

  // Rounds to 0 / +-inf outside native range.
  double to_real() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
  }

  ExtScalar operator-() const { return {-sign, logmag}; }
};

inline ExtScalar ext_add(const ExtScalar& x, const ExtScalar& y) {
  if (x.sign == 0) return y;
  if (y.sign == 0) return x;
  const bool x_hi = x.logmag >= y.logmag;
  const ExtScalar& hi = x_hi ? x : y;
  const double d = x_hi ? x.logmag - y.logmag : y.logmag - x.logmag;
  if (x.sign == y.sign)
    return {x.sign, hi.logmag + std::log1p(std::exp(-d))};
  if (d < kCancelTol)
    throw CancellationError("ext_add: cancellation of nearly equal magnitudes");
  return {hi.sign, hi.logmag + std::log(-std::expm1(-d))};
}

inline ExtScalar ext_mul(const ExtScalar& x, const ExtScalar& y) {
  if (x.sign == 0 || y.sign == 0) return {};
  return {x.sign * y.sign, x.logmag + y.logmag};
}

inline ExtScalar ext_div(const ExtScalar& x, const ExtScalar& y) {
  if (y.sign == 0) throw DivisionByZero("ext_div: zero divisor");
  if (x.sign == 0) return {};
  return {x.sign * y.sign, x.logmag - y.logmag};
}

inline ExtScalar operator+(const ExtScalar& x, const ExtScalar& y) { return ext_add(x, y); }
inline ExtScalar operator-(const ExtScalar& x, const ExtScalar& y) { return ext_add(x, -y); }
inline ExtScalar operator*(const ExtScalar& x, const ExtScalar& y) { return ext_mul(x, y); }
inline ExtScalar operator/(const ExtScalar& x, const ExtScalar& y) { return ext_div(x, y); }

inline bool operator<(const ExtScalar& x, const ExtScalar& y) {
  if (x.sign != y.sign) return x.sign < y.sign;
  if (x.sign > 0) return x.logmag < y.logmag;
  if (x.sign < 0) return x.logmag > y.logmag;
  return false;
}
inline bool operator>(const ExtScalar& x, const ExtScalar& y) { return y < x; }

// base^exponent for a cusp-arc length: arcs never exceed 1, and a unit
// arc is fixed by stretching (logmag stays exactly 0).
inline ExtScalar ext_pow(double base, double exponent) {
  if (!(base > 0.0) || base > 1.0)
    throw DomainError("ext_pow: base outside (0, 1]");
  if (!(exponent > 0.0))
    throw DomainError("ext_pow: exponent must be positive");
  return ExtScalar::from_log(exponent * std::log(base));
}

// arccosh(1 + y) without forming cosh(h) itself; y may be as small as
// e^{-700} or far beyond double range in either direction.
inline double acosh1p(const ExtScalar& y) {
  if (y.sign < 0) throw DomainError("acosh1p: negative input");
  if (y.sign == 0) return 0.0;
  const double L = y.logmag;
  // above e^300 the exact form would overflow in y^2; the log form is
  // already accurate to O(1/y^2) long before that
  if (L > 300.0) {
    // arccosh(1+y) = ln(2(y+1)) + O(1/y^2)
    return L + std::numbers::ln2_v<double> + std::log1p(std::exp(-L));
  }
  if (L < -700.0) {
    // sqrt(2y)(1 - y/12 + ...), correction below representable size
    return std::exp(0.5 * (L + std::numbers::ln2_v<double>));
  }
  const double yd = std::exp(L);
  return std::log1p(yd + std::sqrt(yd * (yd + 2.0)));
}

// ln(acosh1p(y)), stable for y far below double underflow.
inline double log_acosh1p(const ExtScalar& y) {
  if (y.sign < 0) throw DomainError("log_acosh1p: negative input");
  if (y.sign == 0) return kNegInf;
  const double L = y.logmag;
  if (L < -30.0) {
    const double corr = L > -700.0 ? std::log1p(-std::exp(L) / 12.0) : 0.0;
    return 0.5 * (L + std::numbers::ln2_v<double>) + corr;
  }
  return std::log(acosh1p(y));
}

}  // namespace stretchlab
