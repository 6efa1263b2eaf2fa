/**
 * @file rational.hpp
 * @brief Exact rational scalar used throughout the core.
 *
 * All classification degrees, weights, and scale factors are exact
 * rationals with arbitrary-precision numerator and denominator, so the
 * row-sum and column-sum identities hold as identities rather than up to
 * rounding. The type is a thin value wrapper so it can serve directly as
 * an Eigen scalar (see the NumTraits specialization below).
 */

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <Eigen/Core>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace fcaf {

using BigInt = boost::multiprecision::cpp_int;
using BoostRational =
    boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                  boost::multiprecision::et_off>;

/// Arbitrary-precision rational with plain value semantics.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}                // NOLINT: implicit by design
  Rational(long long v) : v_(v) {}          // NOLINT
  Rational(long long num, long long den);
  explicit Rational(BoostRational v) : v_(std::move(v)) {}
  Rational(BigInt num, BigInt den);

  const BoostRational& value() const { return v_; }
  BigInt num() const { return numerator(v_); }
  BigInt den() const { return denominator(v_); }

  bool is_zero() const { return v_.is_zero(); }
  double to_double() const { return v_.convert_to<double>(); }

  /// Canonical "num/den" form in lowest terms, denominator positive.
  std::string str() const;

  Rational operator-() const { return Rational(BoostRational(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ == b.v_) return std::strong_ordering::equal;
    return std::strong_ordering::greater;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  BoostRational v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

/// Parses "num/den", integer, or decimal/scientific text. Decimal input is
/// converted to the nearest rational with denominator at most `max_decimal_den`
/// (exact fraction input is never approximated). Throws std::invalid_argument
/// on malformed text.
Rational parse_rational(const std::string& text,
                        long long max_decimal_den = 1000000000LL);

/// Nearest rational to `x` with denominator at most `max_den`
/// (continued-fraction best approximation; ties resolved toward the
/// smaller denominator).
Rational approximate_rational(const Rational& x, const BigInt& max_den);

/// Exact rational value of a finite double.
Rational rational_from_double(double x);

}  // namespace fcaf

namespace Eigen {

template <>
struct NumTraits<fcaf::Rational> {
  using Real = fcaf::Rational;
  using NonInteger = fcaf::Rational;
  using Literal = fcaf::Rational;
  using Nested = fcaf::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60,
  };
  static inline fcaf::Rational epsilon() { return fcaf::Rational(0); }
  static inline fcaf::Rational dummy_precision() { return fcaf::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
