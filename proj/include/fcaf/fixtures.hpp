/**
 * @file fixtures.hpp
 * @brief Built-in pathological aggregators for exercising the checkers.
 *
 * Each fixture is constructed to violate a specific axiom (or a recovery
 * assumption) while being innocuous elsewhere, so checker tests have a
 * known-guilty subject. The registry exposes them to the CLI under
 * `fixture:<name>`.
 *
 *   constant-uniform   ignores voters; outputs the uniform matrix
 *   object-copy        object 0's output is the mean opinion on object 1
 *   per-object-wam     different weight vectors per object (breaks symmetry)
 *   per-category-wam   different weight vectors per category (breaks weight
 *                      equality across categories)
 *   additive-noise     mean plus a fixed transfer inside row 0 (breaks
 *                      unanimity and zero-unanimity)
 *   extrapolate        2*c_1 - c_2 (leaves the voters' min-max envelope)
 *   bloc-sensitive     switches weight vectors depending on voter 0's
 *                      classification (defeats additivity assumptions)
 *   entrywise-oddh:q   odd power mean applied independently to every entry
 *                      (double lane; breaks row sums once m = p >= 3)
 */

#pragma once

#include <string>
#include <vector>

#include "fcaf/aggregate.hpp"
#include "fcaf/model.hpp"
#include "fcaf/types.hpp"

namespace fcaf {
namespace fixtures {

/// Ignores the profile; every row is the uniform distribution.
template <class S>
AggregatorHandle<S> constant_uniform(const Setting& setting) {
  const int m = setting.object_count;
  const int p = setting.category_count;
  const S cell = scalar_cast<S, Rational>(setting.scale / Rational(p));
  return AggregatorHandle<S>{
      setting,
      [m, p, cell](const Profile<S>&) {
        return Classification<S>::Constant(m, p, cell).eval();
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:constant-uniform"}};
}

/// Arithmetic mean, except object 0's output row is the mean opinion on
/// object 1 — the textbook independence violation.
template <class S>
AggregatorHandle<S> object_copy(const Setting& setting) {
  return AggregatorHandle<S>{
      setting,
      [](const Profile<S>& profile) {
        Classification<S> out = arithmetic_mean<S>(profile);
        out.row(0) = out.row(1);
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:object-copy"}};
}

namespace detail {

/// Deterministic non-uniform weight vector: voter i gets mass proportional
/// to 1 + ((i + shift) mod n).
template <class S>
Weights<S> rotated_weights(int n, int shift) {
  int total = 0;
  for (int i = 0; i < n; ++i) total += 1 + (i + shift) % n;
  Weights<S> w(n);
  for (int i = 0; i < n; ++i)
    w(i) = scalar_cast<S, Rational>(Rational(1 + (i + shift) % n, total));
  return w;
}

}  // namespace detail

/// Row j is aggregated with its own weight vector; twin objects get
/// different treatment whenever voters disagree (breaks symmetry).
template <class S>
AggregatorHandle<S> per_object_wam(const Setting& setting) {
  const int n = setting.voter_count;
  return AggregatorHandle<S>{
      setting,
      [n](const Profile<S>& profile) {
        const int m = profile.setting.object_count;
        const int p = profile.setting.category_count;
        Classification<S> out(m, p);
        for (int j = 0; j < m; ++j) {
          const Weights<S> w = detail::rotated_weights<S>(n, j);
          for (int t = 0; t < p; ++t) {
            S acc = S(0);
            for (int i = 0; i < n; ++i)
              acc += w(i) * profile.voters[static_cast<std::size_t>(i)](j, t);
            out(j, t) = acc;
          }
        }
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:per-object-wam"}};
}

/// Column t is aggregated with its own weight vector; weight recovery reads
/// columns that genuinely differ, so the equality check must fail.
template <class S>
AggregatorHandle<S> per_category_wam(const Setting& setting) {
  const int n = setting.voter_count;
  return AggregatorHandle<S>{
      setting,
      [n](const Profile<S>& profile) {
        const int m = profile.setting.object_count;
        const int p = profile.setting.category_count;
        Classification<S> out(m, p);
        for (int t = 0; t < p; ++t) {
          const Weights<S> w = detail::rotated_weights<S>(n, t);
          for (int j = 0; j < m; ++j) {
            S acc = S(0);
            for (int i = 0; i < n; ++i)
              acc += w(i) * profile.voters[static_cast<std::size_t>(i)](j, t);
            out(j, t) = acc;
          }
        }
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:per-category-wam"}};
}

/// Arithmetic mean plus a fixed 1/100 transfer from entry (0,1) to (0,0):
/// row sums survive, planted unanimous values do not.
template <class S>
AggregatorHandle<S> additive_noise(const Setting& setting) {
  const S eps = scalar_cast<S, Rational>(Rational(1, 100));
  return AggregatorHandle<S>{
      setting,
      [eps](const Profile<S>& profile) {
        Classification<S> out = arithmetic_mean<S>(profile);
        out(0, 0) += eps;
        out(0, 1) -= eps;
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:additive-noise"}};
}

/// 2*c_1 - c_2: unanimous entries are preserved (2r - r = r) but outputs
/// leave the voters' min-max envelope whenever voters 0 and 1 disagree.
template <class S>
AggregatorHandle<S> extrapolate(const Setting& setting) {
  if (setting.voter_count < 2)
    throw Error(ErrorCode::InvalidConfig, "extrapolate fixture needs n >= 2");
  return AggregatorHandle<S>{
      setting,
      [](const Profile<S>& profile) {
        Classification<S> out = profile.voters[0] * S(2);
        out -= profile.voters[1];
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:extrapolate"}};
}

/// WAM whose weights depend on whether voter 0 submitted the identity
/// permutation matrix — consistent probes read inconsistent weights.
template <class S>
AggregatorHandle<S> bloc_sensitive(const Setting& setting) {
  if (setting.voter_count < 2)
    throw Error(ErrorCode::InvalidConfig, "bloc-sensitive fixture needs n >= 2");
  const int n = setting.voter_count;
  // Plan A: uniform. Plan B: voter 0 carries half the mass.
  const Weights<S> plan_a = uniform_weights<S>(n);
  Weights<S> plan_b(n);
  plan_b(0) = scalar_cast<S, Rational>(Rational(1, 2));
  for (int i = 1; i < n; ++i)
    plan_b(i) = scalar_cast<S, Rational>(Rational(1, 2 * (n - 1)));
  return AggregatorHandle<S>{
      setting,
      [plan_a, plan_b](const Profile<S>& profile) {
        const int m = profile.setting.object_count;
        const int p = profile.setting.category_count;
        bool identity = m == p;
        for (int j = 0; j < m && identity; ++j)
          for (int t = 0; t < p; ++t)
            if (!NumericPolicy<S>::eq(profile.voters[0](j, t),
                                      j == t ? S(1) : S(0))) {
              identity = false;
              break;
            }
        return wam_aggregate<S>(identity ? plan_a : plan_b, profile);
      },
      RuleDescriptor{RuleDescriptor::Family::External, "fixture:bloc-sensitive"}};
}

/// Odd power mean applied independently to every (object, category) entry
/// of the shifted restricted columns. At m = p = 2 this is the lawful
/// odd-h rule; at m = p >= 3 the per-entry roots stop summing to 1.
inline AggregatorHandle<double> entrywise_odd_power(const Setting& setting, int q) {
  if (q < 1 || q % 2 == 0)
    throw Error(ErrorCode::EvenExponent,
                "exponent must be odd and positive, got " + std::to_string(q));
  return AggregatorHandle<double>{
      setting,
      [q](const Profile<double>& profile) {
        const int m = profile.setting.object_count;
        const int p = profile.setting.category_count;
        const int n = profile.voter_count();
        Classification<double> out(m, p);
        for (int j = 0; j < m; ++j)
          for (int t = 0; t < p; ++t) {
            Eigen::VectorXd xs(n);
            for (int i = 0; i < n; ++i)
              xs(i) = profile.voters[static_cast<std::size_t>(i)](j, t) - 0.5;
            out(j, t) = odd_power_mean(q, xs) + 0.5;
          }
        return out;
      },
      RuleDescriptor{RuleDescriptor::Family::External,
                     "fixture:entrywise-oddh:" + std::to_string(q)}};
}

/// Names accepted by make_fixture (rational lane).
inline std::vector<std::string> names() {
  return {"constant-uniform", "object-copy",   "per-object-wam",
          "per-category-wam", "additive-noise", "extrapolate",
          "bloc-sensitive"};
}

template <class S>
AggregatorHandle<S> make_fixture(const std::string& name, const Setting& setting) {
  if (name == "constant-uniform") return constant_uniform<S>(setting);
  if (name == "object-copy") return object_copy<S>(setting);
  if (name == "per-object-wam") return per_object_wam<S>(setting);
  if (name == "per-category-wam") return per_category_wam<S>(setting);
  if (name == "additive-noise") return additive_noise<S>(setting);
  if (name == "extrapolate") return extrapolate<S>(setting);
  if (name == "bloc-sensitive") return bloc_sensitive<S>(setting);
  throw Error(ErrorCode::InvalidConfig, "unknown fixture: " + name);
}

}  // namespace fixtures
}  // namespace fcaf
