#include "fcaf/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace fcaf {

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = BoostRational(num);
  v_ /= den;
}

Rational::Rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  v_ = BoostRational(std::move(num));
  v_ /= BoostRational(std::move(den));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_.is_zero()) throw std::invalid_argument("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  return num().str() + "/" + den().str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Decimal digit string -> integer.  Leading zeros are stripped first because
// cpp_int's string constructor follows C++ literal rules and would read a
// leading 0 as an octal prefix.
BigInt digits_to_int(const std::string& s) {
  std::size_t start = s.find_first_not_of('0');
  if (start == std::string::npos) return BigInt(0);
  return BigInt(s.substr(start));
}

// Exact value of "<digits>[.<digits>][(e|E)[+-]<digits>]".
Rational parse_decimal(const std::string& body, bool negative) {
  std::string digits;
  long long frac_len = 0;
  long long exponent = 0;
  std::size_t i = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; i < body.size(); ++i) {
    char c = body[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
      any_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && any_digit) {
      std::string exp = body.substr(i + 1);
      bool exp_neg = false;
      if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        exp_neg = exp[0] == '-';
        exp = exp.substr(1);
      }
      if (!all_digits(exp) || exp.size() > 6) {
        throw std::invalid_argument("malformed exponent in number: " + body);
      }
      exponent = std::stoll(exp);
      if (exp_neg) exponent = -exponent;
      i = body.size();
      break;
    } else {
      throw std::invalid_argument("malformed number: " + body);
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number: " + body);

  BigInt mantissa = digits_to_int(digits);
  if (negative) mantissa = -mantissa;
  long long pow10 = exponent - frac_len;
  BigInt num = mantissa;
  BigInt den = 1;
  if (pow10 >= 0) {
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(pow10));
  } else {
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-pow10));
  }
  return Rational(num, den);
}

}  // namespace

Rational parse_rational(const std::string& text, long long max_decimal_den) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  if (s.empty()) throw std::invalid_argument("malformed number: " + text);

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw std::invalid_argument("malformed fraction: " + text);
    }
    BigInt n = digits_to_int(num), d = digits_to_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + text);
    if (negative) n = -n;
    return Rational(n, d);
  }

  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    Rational exact = parse_decimal(s, negative);
    return approximate_rational(exact, BigInt(max_decimal_den));
  }

  if (!all_digits(s)) throw std::invalid_argument("malformed number: " + text);
  BigInt n = digits_to_int(s);
  if (negative) n = -n;
  return Rational(n, BigInt(1));
}

Rational approximate_rational(const Rational& x, const BigInt& max_den) {
  if (max_den < 1) throw std::invalid_argument("approximation bound must be >= 1");
  if (x.den() <= max_den) return x;

  // Continued-fraction expansion, tracking convergents p/q. When the next
  // convergent's denominator would exceed the bound, the best candidate is
  // the admissible semiconvergent; the nearer of it and the last convergent
  // wins.
  BigInt num = x.num(), den = x.den();
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  BigInt a = num, b = den;
  while (b != 0) {
    BigInt quot = a / b;
    BigInt rem = a - quot * b;
    if (rem < 0) {  // floor division for negatives
      quot -= 1;
      rem += b;
    }
    BigInt p2 = quot * p1 + p0;
    BigInt q2 = quot * q1 + q0;
    if (q2 > max_den) {
      // Largest k with q0 + k*q1 <= max_den.
      BigInt k = q1 == 0 ? BigInt(0) : (max_den - q0) / q1;
      Rational semi(p0 + k * p1, q0 + k * q1);
      Rational conv(p1, q1);
      Rational err_semi = abs(x - semi);
      Rational err_conv = abs(x - conv);
      return err_semi < err_conv ? semi : conv;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    a = b; b = rem;
  }
  return Rational(p1, q1);  // exact despite the bound check above
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return Rational(BoostRational(x));
}

}  // namespace fcaf
