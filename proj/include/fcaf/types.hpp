/**
 * @file types.hpp
 * @brief Domain types: settings, classifications, profiles, weights, errors.
 *
 * A classification is an m x p row-stochastic-like matrix (rows sum to the
 * scale, columns covered according to the variant). A profile is a setting
 * plus one classification per voter. Weights live in a fixed-size vector
 * aligned with the voter axis.
 */

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcaf/policy.hpp"
#include "fcaf/rational.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  DimensionMismatch,
  IndexOutOfRange,
  InvalidPermutation,
  NotSurjective,
  LengthMismatch,
  WrongSetting,
  InvalidH,
  EvenExponent,
  SettingMismatch,
  PairGenerationFailed,
  PreconditionFailed,
  NonAdditive,
  RequiresSquareSetting,
  TooLarge,
  BudgetExceeded,
  ParseError,
  RepairFailed,
  InvalidConfig,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::WrongSetting: return "WrongSetting";
    case ErrorCode::InvalidH: return "InvalidH";
    case ErrorCode::EvenExponent: return "EvenExponent";
    case ErrorCode::SettingMismatch: return "SettingMismatch";
    case ErrorCode::PairGenerationFailed: return "PairGenerationFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NonAdditive: return "NonAdditive";
    case ErrorCode::RequiresSquareSetting: return "RequiresSquareSetting";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RepairFailed: return "RepairFailed";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Library error type; carries a machine-readable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// ---------------------------------------------------------------------------
// Setting
// ---------------------------------------------------------------------------

enum class Variant : std::uint8_t { Standard, Star };

inline const char* variant_name(Variant v) {
  return v == Variant::Standard ? "standard" : "star";
}

/// Problem dimensions: n voters classify m objects into p categories.
/// The star variant carries a nonzero scale s; the standard variant fixes
/// the scale at 1.
struct Setting {
  int voter_count = 1;     ///< n >= 1
  int object_count = 2;    ///< m >= p
  int category_count = 2;  ///< p >= 2
  Variant variant = Variant::Standard;
  Rational scale = Rational(1);  ///< row-sum target s

  bool square() const { return object_count == category_count; }

  void validate() const {
    if (voter_count < 1)
      throw Error(ErrorCode::InvalidConfig, "voter_count must be >= 1");
    if (category_count < 2)
      throw Error(ErrorCode::InvalidConfig, "category_count must be >= 2");
    if (object_count < category_count)
      throw Error(ErrorCode::InvalidConfig,
                  "object_count must be >= category_count");
    if (variant == Variant::Standard && !(scale == Rational(1)))
      throw Error(ErrorCode::InvalidConfig,
                  "standard variant requires scale 1");
    if (variant == Variant::Star && scale.is_zero())
      throw Error(ErrorCode::InvalidConfig, "star variant requires scale != 0");
  }

  bool operator==(const Setting& other) const {
    return voter_count == other.voter_count &&
           object_count == other.object_count &&
           category_count == other.category_count &&
           variant == other.variant && scale == other.scale;
  }
};

// ---------------------------------------------------------------------------
// Classifications and profiles
// ---------------------------------------------------------------------------

/// One voter's opinion: objects along rows, categories along columns.
template <class S>
using Classification = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

/// Column of per-voter memberships of a single object in a single category.
template <class S>
using ObjectColumn = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
struct Profile {
  Setting setting;
  std::vector<Classification<S>> voters;

  int voter_count() const { return static_cast<int>(voters.size()); }
};

/// Cast every entry of a classification to another scalar lane.
template <class To, class From>
Classification<To> cast_classification(const Classification<From>& c) {
  Classification<To> out(c.rows(), c.cols());
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j)
      out(i, j) = scalar_cast<To, From>(c(i, j));
  return out;
}

template <class To, class From>
Profile<To> cast_profile(const Profile<From>& profile) {
  Profile<To> out;
  out.setting = profile.setting;
  out.voters.reserve(profile.voters.size());
  for (const auto& v : profile.voters)
    out.voters.push_back(cast_classification<To, From>(v));
  return out;
}

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

template <class S>
using Weights = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Build a weight vector, checking nonnegativity and unit sum.
template <class S>
Weights<S> make_weights(const std::vector<S>& entries) {
  if (entries.empty())
    throw Error(ErrorCode::LengthMismatch, "weight vector must be nonempty");
  Weights<S> w(static_cast<Eigen::Index>(entries.size()));
  S sum = S(0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!NumericPolicy<S>::geq(entries[i], S(0)))
      throw Error(ErrorCode::InvalidConfig, "weights must be nonnegative");
    w(static_cast<Eigen::Index>(i)) = entries[i];
    sum += entries[i];
  }
  if (!NumericPolicy<S>::eq(sum, S(1)))
    throw Error(ErrorCode::InvalidConfig, "weights must sum to 1");
  return w;
}

/// A weight vector is degenerate when one voter carries all the mass.
template <class S>
bool degenerate(const Weights<S>& w) {
  for (Eigen::Index i = 0; i < w.size(); ++i)
    if (NumericPolicy<S>::eq(w(i), S(1))) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Crisp classifications
// ---------------------------------------------------------------------------

/// Crisp opinion: assignment[i] is the category of object i (0-based).
struct CrispClassification {
  std::vector<int> assignment;

  int object_count() const { return static_cast<int>(assignment.size()); }

  bool operator==(const CrispClassification& other) const {
    return assignment == other.assignment;
  }
};

}  // namespace fcaf
