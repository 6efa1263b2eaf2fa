#pragma once

// Shared constructors for the test suites: rational literals, matrix
// literals, settings, and the worked three-voter profile used across files.

#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcaf/rational.hpp"
#include "fcaf/types.hpp"

namespace fcaf_test {

inline fcaf::Rational rat(const std::string& text) {
  return fcaf::parse_rational(text);
}

inline fcaf::Classification<fcaf::Rational> mat(
    std::initializer_list<std::initializer_list<const char*>> rows) {
  const int m = static_cast<int>(rows.size());
  const int p = static_cast<int>(rows.begin()->size());
  fcaf::Classification<fcaf::Rational> out(m, p);
  int j = 0;
  for (const auto& row : rows) {
    int t = 0;
    for (const char* cell : row) out(j, t++) = rat(cell);
    ++j;
  }
  return out;
}

inline fcaf::Profile<fcaf::Rational> make_profile(
    const fcaf::Setting& setting,
    std::vector<fcaf::Classification<fcaf::Rational>> voters) {
  fcaf::Profile<fcaf::Rational> out;
  out.setting = setting;
  out.voters = std::move(voters);
  return out;
}

inline fcaf::Setting standard(int n, int m, int p) {
  return fcaf::Setting{n, m, p, fcaf::Variant::Standard, fcaf::Rational(1)};
}

inline fcaf::Setting star(int n, int m, int p, fcaf::Rational s) {
  return fcaf::Setting{n, m, p, fcaf::Variant::Star, std::move(s)};
}

/// The worked three-voter, three-object, three-category profile (objects as
/// rows). Weighting it by (1/2, 0, 1/2) has a known exact output.
inline fcaf::Profile<fcaf::Rational> worked_example() {
  auto v1 = mat({{"1/3", "2/3", "0"}, {"2/3", "0", "1/3"}, {"0", "1/3", "2/3"}});
  auto v2 = mat({{"1", "0", "0"}, {"0", "0", "1"}, {"0", "1", "0"}});
  auto v3 = mat({{"1/2", "1/4", "1/4"}, {"1/2", "0", "1/2"}, {"0", "3/4", "1/4"}});
  return make_profile(standard(3, 3, 3), {v1, v2, v3});
}

/// Runs fn and reports the library error code it threw, if any.
template <class Fn>
std::optional<fcaf::ErrorCode> error_code_of(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
    return std::nullopt;
  } catch (const fcaf::Error& e) {
    return e.code();
  }
}

}  // namespace fcaf_test
