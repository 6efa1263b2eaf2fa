/**
 * @file rng.hpp
 * @brief Deterministic random source with rational-friendly helpers.
 *
 * All randomized components draw through this wrapper only. The helper set
 * is hand-rolled (no std distributions) so a fixed seed produces identical
 * streams across standard library implementations.
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "fcaf/rational.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

/// Denominator of the sampling lattice: random fractions are k / 2^20.
inline constexpr std::int64_t kLatticeDenominator = 1 << 20;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw Error(ErrorCode::InvalidConfig, "below(0) is undefined");
    return next_u64() % n;
  }

  /// Uniform lattice fraction in [0, 1], both endpoints included.
  Rational unit_lattice() {
    const std::int64_t k =
        static_cast<std::int64_t>(below(static_cast<std::uint64_t>(kLatticeDenominator) + 1));
    return Rational(k, kLatticeDenominator);
  }

  /// Uniform lattice point in [lo, hi]: lo + (hi - lo) * k / 2^20.
  Rational rational_in(const Rational& lo, const Rational& hi) {
    return lo + (hi - lo) * unit_lattice();
  }

  /// Random point of the standard simplex in dimension p: spacings between
  /// p - 1 sorted lattice cuts of [0, 1]. Coordinates sum to 1 exactly.
  std::vector<Rational> simplex(int p) {
    if (p < 1) throw Error(ErrorCode::InvalidConfig, "simplex dimension < 1");
    std::vector<Rational> cuts;
    cuts.reserve(static_cast<std::size_t>(p) + 1);
    cuts.push_back(Rational(0));
    for (int i = 0; i + 1 < p; ++i) cuts.push_back(unit_lattice());
    cuts.push_back(Rational(1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i)
      out.push_back(cuts[static_cast<std::size_t>(i) + 1] -
                    cuts[static_cast<std::size_t>(i)]);
    return out;
  }

  /// Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<int> random_permutation(int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    return perm;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fcaf
