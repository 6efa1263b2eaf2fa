/**
 * @file policy.hpp
 * @brief Comparison policy for the two scalar lanes.
 *
 * The core runs in two instantiations: exact rationals (every comparison is
 * an identity check) and doubles (the odd-power-mean family, compared under
 * a fixed tolerance). Everything that compares aggregator outputs routes
 * through this trait so the exact lane never silently picks up a tolerance.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "fcaf/rational.hpp"

namespace fcaf {

template <class Scalar>
struct NumericPolicy;

template <>
struct NumericPolicy<Rational> {
  static constexpr bool kExact = true;

  static Rational tolerance() { return Rational(0); }
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool leq(const Rational& a, const Rational& b) { return a <= b; }
  static bool geq(const Rational& a, const Rational& b) { return a >= b; }
  static Rational abs(const Rational& v) { return fcaf::abs(v); }
  /// Unusable as a pivot in elimination.
  static bool negligible(const Rational& v) { return v.is_zero(); }
  static double to_double(const Rational& v) { return v.to_double(); }
  static std::string str(const Rational& v) { return v.str(); }
};

template <>
struct NumericPolicy<double> {
  static constexpr bool kExact = false;

  static double tolerance() { return 1e-12; }
  static bool eq(double a, double b) { return std::fabs(a - b) <= tolerance(); }
  static bool leq(double a, double b) { return a <= b + tolerance(); }
  static bool geq(double a, double b) { return a >= b - tolerance(); }
  static double abs(double v) { return std::fabs(v); }
  /// Unusable as a pivot in elimination.
  static bool negligible(double v) { return std::fabs(v) <= 1e-13; }
  static double to_double(double v) { return v; }
  static std::string str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  }
};

/// Scalar conversion between the two lanes.
template <class To, class From>
To scalar_cast(const From& v);

template <>
inline Rational scalar_cast<Rational, Rational>(const Rational& v) { return v; }
template <>
inline double scalar_cast<double, Rational>(const Rational& v) { return v.to_double(); }
template <>
inline double scalar_cast<double, double>(const double& v) { return v; }
template <>
inline Rational scalar_cast<Rational, double>(const double& v) { return rational_from_double(v); }

}  // namespace fcaf
