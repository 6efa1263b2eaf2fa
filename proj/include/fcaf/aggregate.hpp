/**
 * @file aggregate.hpp
 * @brief Aggregator families: weighted arithmetic mean, arithmetic mean,
 *        the odd-h family for the 2x2 setting, and scale-s WAM.
 *
 * The linear families run in either scalar lane. Odd power means take
 * irrational roots, so they live in the double lane; root extraction goes
 * through 50-digit floats and is the only inexact operation in the core
 * (relative error at the double boundary <= 1e-15).
 */

#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Odd power mean
// ---------------------------------------------------------------------------

/// Sign-preserving q-th root of the mean of q-th powers, q odd.
inline double odd_power_mean(int q, const Eigen::VectorXd& xs) {
  if (q < 1 || q % 2 == 0)
    throw Error(ErrorCode::EvenExponent,
                "exponent must be odd and positive, got " + std::to_string(q));
  if (xs.size() == 0)
    throw Error(ErrorCode::LengthMismatch, "power mean of empty vector");
  if (q == 1) return xs.mean();

  using BigFloat = boost::multiprecision::cpp_bin_float_50;
  BigFloat acc = 0;
  for (Eigen::Index i = 0; i < xs.size(); ++i)
    acc += boost::multiprecision::pow(BigFloat(xs[i]), q);
  acc /= static_cast<int>(xs.size());
  if (acc == 0) return 0.0;
  const BigFloat magnitude = boost::multiprecision::abs(acc);
  const BigFloat root =
      boost::multiprecision::pow(magnitude, BigFloat(1) / BigFloat(q));
  const double r = root.convert_to<double>();
  return acc < 0 ? -r : r;
}

// ---------------------------------------------------------------------------
// HSpec: odd functions on [-1/2, 1/2]^n
// ---------------------------------------------------------------------------

/// An odd aggregation kernel h with h(1/2,...,1/2) = 1/2 and range inside
/// [-1/2, 1/2]. Weighted sums work in both lanes; power means only in the
/// double lane; custom kernels are vetted by randomized spot checks.
template <class S>
class HSpec {
 public:
  enum class Kind { WeightedSum, OddPowerMean, Custom };
  using Fn = std::function<S(const ObjectColumn<S>&)>;

  static HSpec weighted_sum(Weights<S> w) {
    HSpec h;
    h.kind_ = Kind::WeightedSum;
    h.arity_ = static_cast<int>(w.size());
    h.exponent_ = 0;
    h.weights_ = std::move(w);
    return h;
  }

  static HSpec power_mean(int q) {
    if (q < 1 || q % 2 == 0)
      throw Error(ErrorCode::EvenExponent,
                  "exponent must be odd and positive, got " + std::to_string(q));
    HSpec h;
    h.kind_ = Kind::OddPowerMean;
    h.arity_ = 0;  // any
    h.exponent_ = q;
    return h;
  }

  /// Vets fn by `checks` random draws: oddness, range, and the upper fixed
  /// point. Throws InvalidH when a draw refutes the contract.
  static HSpec custom(int arity, Fn fn, std::uint64_t check_seed = 11,
                      int checks = 256) {
    if (arity < 1)
      throw Error(ErrorCode::InvalidConfig, "custom h needs arity >= 1");
    HSpec h;
    h.kind_ = Kind::Custom;
    h.arity_ = arity;
    h.exponent_ = 0;
    h.fn_ = std::move(fn);
    h.spot_check(check_seed, checks);
    return h;
  }

  Kind kind() const { return kind_; }
  int arity() const { return arity_; }  ///< 0 means any input length
  int exponent() const { return exponent_; }
  const Weights<S>& weights() const { return weights_; }

  S eval(const ObjectColumn<S>& xs) const {
    if (arity_ != 0 && static_cast<int>(xs.size()) != arity_)
      throw Error(ErrorCode::LengthMismatch,
                  "h expects " + std::to_string(arity_) + " inputs");
    switch (kind_) {
      case Kind::WeightedSum: {
        S acc = S(0);
        for (Eigen::Index i = 0; i < xs.size(); ++i) acc += weights_(i) * xs(i);
        return acc;
      }
      case Kind::OddPowerMean: {
        if constexpr (std::is_same_v<S, double>) {
          return odd_power_mean(exponent_, xs);
        } else {
          throw Error(ErrorCode::InvalidH,
                      "odd power means need the double lane (roots are "
                      "irrational)");
        }
      }
      case Kind::Custom:
        return fn_(xs);
    }
    throw Error(ErrorCode::InvalidH, "unreachable h kind");
  }

 private:
  HSpec() = default;

  void spot_check(std::uint64_t seed, int checks) const {
    using P = NumericPolicy<S>;
    const S half = scalar_cast<S, Rational>(Rational(1, 2));
    ObjectColumn<S> top = ObjectColumn<S>::Constant(arity_, half);
    if (!P::eq(eval(top), half))
      throw Error(ErrorCode::InvalidH, "h(1/2,...,1/2) != 1/2");

    Rng rng(seed);
    const Rational lo(-1, 2), hi(1, 2);
    for (int c = 0; c < checks; ++c) {
      ObjectColumn<S> xs(arity_);
      for (int i = 0; i < arity_; ++i)
        xs(i) = scalar_cast<S, Rational>(rng.rational_in(lo, hi));
      const S fwd = eval(xs);
      const S bwd = eval((-xs).eval());
      if (!P::eq(fwd, S(0) - bwd))
        throw Error(ErrorCode::InvalidH, "h is not odd on a sampled input");
      if (!P::leq(fwd, half) || !P::geq(fwd, S(0) - half))
        throw Error(ErrorCode::InvalidH, "h leaves [-1/2, 1/2]");
    }
  }

  Kind kind_ = Kind::Custom;
  int arity_ = 0;
  int exponent_ = 0;
  Weights<S> weights_;
  Fn fn_;
};

// ---------------------------------------------------------------------------
// Aggregators
// ---------------------------------------------------------------------------

/// Entry (j,t) = sum_i w_i * c_i(x_j)_t. Works for both variants (the star
/// rule is the same linear map under different validity constraints).
template <class S>
Classification<S> wam_aggregate(const Weights<S>& w, const Profile<S>& profile) {
  const int n = profile.voter_count();
  if (static_cast<int>(w.size()) != n)
    throw Error(ErrorCode::LengthMismatch,
                "weight count " + std::to_string(w.size()) +
                    " != voter count " + std::to_string(n));
  Classification<S> out = Classification<S>::Constant(
      profile.setting.object_count, profile.setting.category_count, S(0));
  for (int i = 0; i < n; ++i)
    out += w(i) * profile.voters[static_cast<std::size_t>(i)];
  return out;
}

/// Uniform weights 1/n.
template <class S>
Weights<S> uniform_weights(int n) {
  Weights<S> w(n);
  for (int i = 0; i < n; ++i)
    w(i) = scalar_cast<S, Rational>(Rational(1, n));
  return w;
}

template <class S>
Classification<S> arithmetic_mean(const Profile<S>& profile) {
  return wam_aggregate<S>(uniform_weights<S>(profile.voter_count()), profile);
}

/// Scale-s weighted mean; insists on the star variant.
template <class S>
Classification<S> star_wam(const Weights<S>& w, const Profile<S>& profile) {
  if (profile.setting.variant != Variant::Star)
    throw Error(ErrorCode::WrongSetting, "star_wam requires the star variant");
  return wam_aggregate<S>(w, profile);
}

/// Theorem-style 2x2 rule: each output entry is h of the shifted restricted
/// column, shifted back. Output validity is re-checked (a vetted h can still
/// misbehave off the sampled checks; catch it here).
template <class S>
Classification<S> h_aggregate_2x2(const HSpec<S>& h, const Profile<S>& profile) {
  const Setting& setting = profile.setting;
  if (setting.object_count != 2 || setting.category_count != 2)
    throw Error(ErrorCode::WrongSetting, "h aggregation is defined for m = p = 2");
  const int n = profile.voter_count();
  const S half = scalar_cast<S, Rational>(Rational(1, 2));

  Classification<S> out(2, 2);
  for (int j = 0; j < 2; ++j) {
    const Classification<S> column = restrict<S>(profile, j);  // n x 2
    for (int t = 0; t < 2; ++t) {
      ObjectColumn<S> xs(n);
      for (int i = 0; i < n; ++i) xs(i) = column(i, t) - half;
      out(j, t) = h.eval(xs) + half;
    }
  }
  if (!validate_classification<S>(out, setting).ok())
    throw Error(ErrorCode::InvalidH, "h produced an invalid classification");
  return out;
}

// ---------------------------------------------------------------------------
// Aggregator handles
// ---------------------------------------------------------------------------

struct RuleDescriptor {
  enum class Family { WAM, ArithmeticMean, OddH, External };
  Family family = Family::External;
  std::string text;  ///< canonical rule string, e.g. "wam:1/2,0,1/2"
};

inline const char* family_name(RuleDescriptor::Family f) {
  switch (f) {
    case RuleDescriptor::Family::WAM: return "wam";
    case RuleDescriptor::Family::ArithmeticMean: return "mean";
    case RuleDescriptor::Family::OddH: return "oddh";
    case RuleDescriptor::Family::External: return "external";
  }
  return "unknown";
}

/// Black box handed to checkers and weight recovery: a declared setting and
/// an opaque profile -> classification map. Output validity is not assumed.
template <class S>
struct AggregatorHandle {
  Setting setting;
  std::function<Classification<S>(const Profile<S>&)> eval;
  RuleDescriptor descriptor;
};

template <class S>
AggregatorHandle<S> make_wam(const Setting& setting, const Weights<S>& w) {
  if (static_cast<int>(w.size()) != setting.voter_count)
    throw Error(ErrorCode::LengthMismatch, "weight count != voter count");
  std::string text = "wam:";
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i > 0) text += ",";
    text += NumericPolicy<S>::str(w(i));
  }
  return AggregatorHandle<S>{
      setting,
      [w](const Profile<S>& profile) { return wam_aggregate<S>(w, profile); },
      RuleDescriptor{RuleDescriptor::Family::WAM, text}};
}

template <class S>
AggregatorHandle<S> make_arithmetic_mean(const Setting& setting) {
  return AggregatorHandle<S>{
      setting,
      [](const Profile<S>& profile) { return arithmetic_mean<S>(profile); },
      RuleDescriptor{RuleDescriptor::Family::ArithmeticMean, "mean"}};
}

template <class S>
AggregatorHandle<S> make_odd_h(const Setting& setting, const HSpec<S>& h) {
  if (setting.object_count != 2 || setting.category_count != 2)
    throw Error(ErrorCode::WrongSetting, "oddh rules require m = p = 2");
  std::string text = "oddh";
  if (h.kind() == HSpec<S>::Kind::OddPowerMean)
    text += ":" + std::to_string(h.exponent());
  return AggregatorHandle<S>{
      setting,
      [h](const Profile<S>& profile) { return h_aggregate_2x2<S>(h, profile); },
      RuleDescriptor{RuleDescriptor::Family::OddH, text}};
}

}  // namespace fcaf
