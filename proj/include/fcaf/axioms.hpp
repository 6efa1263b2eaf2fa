/**
 * @file axioms.hpp
 * @brief Black-box axiom checkers with replayable witnesses.
 *
 * Every checker shares one contract: run the aggregator over a trial set
 * (explicit profiles, or seeded constructed samples), return Satisfied when
 * no violation was found — falsification, not proof — or Violated carrying
 * a witness that re-triggers the violation on replay. Non-dictatorship is
 * three-valued: it can only refute dictator candidates, so voters that
 * survive the budget make the whole check Inconclusive, never Violated.
 *
 * Premise-carrying axioms (independence, symmetry, unanimity) construct
 * their premise instances when sampling: freeze the premise rows, complete
 * the rest of each classification to validity. With explicit profiles they
 * scan for premise instances instead, and report a vacuous pass when the
 * supplied set contains none.
 *
 * Comparisons are exact in the rational lane and 1e-12-tolerant in the
 * double lane (NumericPolicy).
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fcaf/aggregate.hpp"
#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/sample.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Report types
// ---------------------------------------------------------------------------

enum class Axiom {
  OutputValidity,
  Independence,
  Symmetry,
  Unanimity,
  ZeroUnanimity,
  FuzzyConsensus,
  NonDictatorship,
  Anonymity,
  KAllocation,
};

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::OutputValidity: return "output-validity";
    case Axiom::Independence: return "independence";
    case Axiom::Symmetry: return "symmetry";
    case Axiom::Unanimity: return "unanimity";
    case Axiom::ZeroUnanimity: return "zero-unanimity";
    case Axiom::FuzzyConsensus: return "fuzzy-consensus";
    case Axiom::NonDictatorship: return "non-dictatorship";
    case Axiom::Anonymity: return "anonymity";
    case Axiom::KAllocation: return "k-allocation";
  }
  return "unknown";
}

enum class Verdict { Satisfied, Violated, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

/// Everything needed to reproduce one violation. Which fields are set
/// depends on the axiom (a second profile for pair axioms, a permutation
/// for anonymity, twin objects for symmetry).
template <class S>
struct Witness {
  Profile<S> profile;
  std::optional<Profile<S>> second_profile;
  std::vector<int> permutation;
  int object = -1;
  int object2 = -1;
  int category = -1;
  S expected = S(0);
  S actual = S(0);
  std::string detail;
};

template <class S>
struct AxiomReport {
  Axiom axiom = Axiom::OutputValidity;
  Verdict verdict = Verdict::Satisfied;
  bool vacuous = false;  ///< Satisfied with no premise instance encountered
  int trials = 0;        ///< trials actually executed
  std::uint64_t seed = 0;
  std::optional<Witness<S>> witness;
  std::vector<int> unrefuted_voters;  ///< non-dictatorship candidates
  std::vector<std::string> notes;
};

/// Seeded trial budget for sampled checking.
struct Sampled {
  int count = 1000;
  std::uint64_t seed = 0;
};

/// Trial source: caller-supplied profiles, or constructed samples.
template <class S>
using Source = std::variant<std::vector<Profile<S>>, Sampled>;

// ---------------------------------------------------------------------------
// Shared machinery
// ---------------------------------------------------------------------------

namespace detail {

template <class S>
const std::vector<Profile<S>>* explicit_profiles(const Source<S>& source) {
  return std::get_if<std::vector<Profile<S>>>(&source);
}

template <class S>
void require_setting_match(const AggregatorHandle<S>& agg,
                           const Source<S>& source) {
  if (const auto* profiles = explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!(profile.setting == agg.setting))
        throw Error(ErrorCode::SettingMismatch,
                    "explicit profile setting differs from the aggregator's");
  }
}

template <class S>
std::uint64_t source_seed(const Source<S>& source) {
  if (const auto* sampled = std::get_if<Sampled>(&source)) return sampled->seed;
  return 0;
}

template <class S>
AxiomReport<S> base_report(Axiom axiom, const Source<S>& source) {
  AxiomReport<S> report;
  report.axiom = axiom;
  report.seed = source_seed<S>(source);
  return report;
}

/// First entry where two equally-shaped matrices differ under the policy.
template <class S>
std::optional<std::pair<int, int>> first_difference(const Classification<S>& a,
                                                    const Classification<S>& b) {
  for (Eigen::Index j = 0; j < a.rows(); ++j)
    for (Eigen::Index t = 0; t < a.cols(); ++t)
      if (!NumericPolicy<S>::eq(a(j, t), b(j, t)))
        return std::make_pair(static_cast<int>(j), static_cast<int>(t));
  return std::nullopt;
}

/// Simplex row usable as a duplicated object row: square settings need
/// every coordinate <= 1/2 so two copies fit the column budget.
inline std::vector<Rational> sample_twin_row(const Setting& shadow, Rng& rng,
                                             int max_attempts) {
  const int p = shadow.category_count;
  if (shadow.square() && p == 2) return {Rational(1, 2), Rational(1, 2)};
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<Rational> d = rng.simplex(p);
    if (shadow.square()) {
      bool ok = true;
      for (const Rational& x : d)
        if (x > Rational(1, 2)) { ok = false; break; }
      if (!ok) continue;
    }
    return d;
  }
  throw Error(ErrorCode::PairGenerationFailed,
              "no duplicable object row found within the attempt budget");
}

/// Complete each voter around fixed rows; nullopt if any voter fails.
inline std::optional<Profile<Rational>> complete_profile(
    const Setting& shadow,
    const std::vector<std::map<int, std::vector<Rational>>>& fixed_per_voter,
    Rng& rng) {
  Profile<Rational> profile;
  profile.setting = shadow;
  profile.voters.reserve(fixed_per_voter.size());
  for (const auto& fixed : fixed_per_voter) {
    auto c = complete_classification(shadow, fixed, rng);
    if (!c) return std::nullopt;
    profile.voters.push_back(std::move(*c));
  }
  return profile;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Checkers
// ---------------------------------------------------------------------------

template <class S>
AxiomReport<S> check_output_validity(const AggregatorHandle<S>& agg,
                                     const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::OutputValidity, source);

  auto inspect = [&](const Profile<S>& profile) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    const ValidationResult<S> vr = validate_classification<S>(out, agg.setting);
    if (vr.ok()) return true;
    Witness<S> w;
    w.profile = profile;
    w.object = vr.row;
    w.category = vr.column;
    w.actual = vr.actual;
    w.detail = vr.describe();
    report.verdict = Verdict::Violated;
    report.witness = std::move(w);
    return false;
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!inspect(profile)) break;
  } else {
    const Sampled sampled = std::get<Sampled>(source);
    Rng rng(sampled.seed);
    for (int trial = 0; trial < sampled.count; ++trial)
      if (!inspect(sample_setting_profile<S>(agg.setting, rng))) break;
  }
  return report;
}

template <class S>
AxiomReport<S> check_independence(const AggregatorHandle<S>& agg,
                                  const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::Independence, source);
  const Setting& setting = agg.setting;

  if (setting.object_count == 2 && setting.category_count == 2) {
    report.vacuous = true;
    report.notes.push_back(
        "independence holds trivially when m = p = 2: the constraints make "
        "each object's column determine the other's");
    return report;
  }

  auto compare_at = [&](const Profile<S>& a, const Profile<S>& b,
                        int object) -> bool {
    ++report.trials;
    const Classification<S> out_a = agg.eval(a);
    const Classification<S> out_b = agg.eval(b);
    for (int t = 0; t < setting.category_count; ++t) {
      if (!NumericPolicy<S>::eq(out_a(object, t), out_b(object, t))) {
        Witness<S> w;
        w.profile = a;
        w.second_profile = b;
        w.object = object;
        w.category = t;
        w.expected = out_a(object, t);
        w.actual = out_b(object, t);
        w.detail = "profiles agree on the object's columns but outputs differ";
        report.verdict = Verdict::Violated;
        report.witness = std::move(w);
        return false;
      }
    }
    return true;
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    // Premise scan: pairs that agree on some object's columns.
    bool premise_found = false;
    for (std::size_t a = 0; a < profiles->size(); ++a)
      for (std::size_t b = a + 1; b < profiles->size(); ++b)
        for (int j = 0; j < setting.object_count; ++j) {
          bool agree = true;
          for (int i = 0; i < setting.voter_count && agree; ++i)
            for (int t = 0; t < setting.category_count; ++t)
              if (!NumericPolicy<S>::eq((*profiles)[a].voters[static_cast<std::size_t>(i)](j, t),
                                        (*profiles)[b].voters[static_cast<std::size_t>(i)](j, t))) {
                agree = false;
                break;
              }
          if (!agree) continue;
          premise_found = true;
          if (!compare_at((*profiles)[a], (*profiles)[b], j)) return report;
        }
    if (!premise_found) {
      report.vacuous = true;
      report.notes.push_back(
          "no pair of supplied profiles agrees on an object's columns");
    }
    return report;
  }

  const Sampled sampled = std::get<Sampled>(source);
  Rng rng(sampled.seed);
  const Setting shadow = standard_shadow(setting);
  for (int trial = 0; trial < sampled.count; ++trial) {
    SamplerConfig config{shadow, 0, default_strategy(shadow)};
    const Profile<Rational> base = sample_profile(config, rng);
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(setting.object_count)));

    std::vector<std::map<int, std::vector<Rational>>> fixed;
    fixed.reserve(base.voters.size());
    for (const auto& voter : base.voters) {
      std::map<int, std::vector<Rational>> f;
      std::vector<Rational> row(static_cast<std::size_t>(setting.category_count));
      for (int t = 0; t < setting.category_count; ++t) row[static_cast<std::size_t>(t)] = voter(j, t);
      f.emplace(j, std::move(row));
      fixed.push_back(std::move(f));
    }
    auto variant_profile = detail::complete_profile(shadow, fixed, rng);
    if (!variant_profile)
      throw Error(ErrorCode::PairGenerationFailed,
                  "frozen object column admitted no valid completion");
    const Profile<S> a = materialize_profile<S>(base, setting);
    const Profile<S> b = materialize_profile<S>(std::move(*variant_profile), setting);
    if (!compare_at(a, b, j)) return report;
  }
  return report;
}

template <class S>
AxiomReport<S> check_symmetry(const AggregatorHandle<S>& agg,
                              const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::Symmetry, source);
  const Setting& setting = agg.setting;

  auto twins_agree = [&](const Profile<S>& profile, int j1, int j2) -> bool {
    for (int i = 0; i < setting.voter_count; ++i)
      for (int t = 0; t < setting.category_count; ++t)
        if (!NumericPolicy<S>::eq(profile.voters[static_cast<std::size_t>(i)](j1, t),
                                  profile.voters[static_cast<std::size_t>(i)](j2, t)))
          return false;
    return true;
  };

  auto compare_rows = [&](const Profile<S>& profile, int j1, int j2) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    for (int t = 0; t < setting.category_count; ++t) {
      if (!NumericPolicy<S>::eq(out(j1, t), out(j2, t))) {
        Witness<S> w;
        w.profile = profile;
        w.object = j1;
        w.object2 = j2;
        w.category = t;
        w.expected = out(j1, t);
        w.actual = out(j2, t);
        w.detail = "every voter treats the two objects identically but the "
                   "outputs differ";
        report.verdict = Verdict::Violated;
        report.witness = std::move(w);
        return false;
      }
    }
    return true;
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    bool premise_found = false;
    for (const auto& profile : *profiles)
      for (int j1 = 0; j1 < setting.object_count; ++j1)
        for (int j2 = j1 + 1; j2 < setting.object_count; ++j2) {
          if (!twins_agree(profile, j1, j2)) continue;
          premise_found = true;
          if (!compare_rows(profile, j1, j2)) return report;
        }
    if (!premise_found) {
      report.vacuous = true;
      report.notes.push_back(
          "no supplied profile contains two objects with identical rows");
    }
    return report;
  }

  const Sampled sampled = std::get<Sampled>(source);
  Rng rng(sampled.seed);
  const Setting shadow = standard_shadow(setting);
  for (int trial = 0; trial < sampled.count; ++trial) {
    const int j1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(setting.object_count)));
    int j2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(setting.object_count - 1)));
    if (j2 >= j1) ++j2;

    std::vector<std::map<int, std::vector<Rational>>> fixed;
    fixed.reserve(static_cast<std::size_t>(setting.voter_count));
    for (int i = 0; i < setting.voter_count; ++i) {
      const std::vector<Rational> d = detail::sample_twin_row(shadow, rng, 10000);
      std::map<int, std::vector<Rational>> f;
      f.emplace(j1, d);
      f.emplace(j2, d);
      fixed.push_back(std::move(f));
    }
    auto profile = detail::complete_profile(shadow, fixed, rng);
    if (!profile)
      throw Error(ErrorCode::PairGenerationFailed,
                  "duplicated rows admitted no valid completion");
    if (!compare_rows(materialize_profile<S>(std::move(*profile), setting), j1, j2))
      return report;
  }
  return report;
}

namespace detail {

/// Shared core of the unanimity checks: plant value r at (j, t) across all
/// voters (when sampling) or scan for unanimous entries (explicit mode).
template <class S>
AxiomReport<S> check_planted_entry(const AggregatorHandle<S>& agg,
                                   const Source<S>& source, Axiom axiom,
                                   bool zero_only) {
  require_setting_match<S>(agg, source);
  AxiomReport<S> report = base_report<S>(axiom, source);
  const Setting& setting = agg.setting;

  auto inspect = [&](const Profile<S>& profile, int j, int t,
                     const S& r) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    if (NumericPolicy<S>::eq(out(j, t), r)) return true;
    Witness<S> w;
    w.profile = profile;
    w.object = j;
    w.category = t;
    w.expected = r;
    w.actual = out(j, t);
    w.detail = "unanimous entry value is not preserved";
    report.verdict = Verdict::Violated;
    report.witness = std::move(w);
    return false;
  };

  if (const auto* profiles = explicit_profiles<S>(source)) {
    bool premise_found = false;
    for (const auto& profile : *profiles)
      for (int j = 0; j < setting.object_count; ++j)
        for (int t = 0; t < setting.category_count; ++t) {
          const S r = profile.voters[0](j, t);
          if (zero_only && !NumericPolicy<S>::eq(r, S(0))) continue;
          bool unanimous = true;
          for (int i = 1; i < setting.voter_count && unanimous; ++i)
            unanimous = NumericPolicy<S>::eq(profile.voters[static_cast<std::size_t>(i)](j, t), r);
          if (!unanimous) continue;
          premise_found = true;
          if (!inspect(profile, j, t, r)) return report;
        }
    if (!premise_found) {
      report.vacuous = true;
      report.notes.push_back("no supplied profile contains a unanimous entry");
    }
    return report;
  }

  const Sampled sampled = std::get<Sampled>(source);
  Rng rng(sampled.seed);
  const Setting shadow = standard_shadow(setting);
  const int p = setting.category_count;
  for (int trial = 0; trial < sampled.count; ++trial) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(setting.object_count)));
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
    const Rational r = zero_only ? Rational(0) : rng.unit_lattice();

    std::vector<std::map<int, std::vector<Rational>>> fixed;
    fixed.reserve(static_cast<std::size_t>(setting.voter_count));
    for (int i = 0; i < setting.voter_count; ++i) {
      // Row for object j: r at category t, the rest of the mass spread
      // over the other categories by an independent simplex draw.
      std::vector<Rational> row(static_cast<std::size_t>(p));
      const std::vector<Rational> rest = rng.simplex(p - 1);
      int k = 0;
      for (int tt = 0; tt < p; ++tt) {
        if (tt == t) {
          row[static_cast<std::size_t>(tt)] = r;
        } else {
          row[static_cast<std::size_t>(tt)] = (Rational(1) - r) * rest[static_cast<std::size_t>(k)];
          ++k;
        }
      }
      std::map<int, std::vector<Rational>> f;
      f.emplace(j, std::move(row));
      fixed.push_back(std::move(f));
    }
    auto profile = complete_profile(shadow, fixed, rng);
    if (!profile)
      throw Error(ErrorCode::PairGenerationFailed,
                  "planted unanimous entry admitted no valid completion");
    const S planted = scalar_cast<S, Rational>(
        setting.variant == Variant::Star ? r * setting.scale : r);
    if (!inspect(materialize_profile<S>(std::move(*profile), setting), j, t, planted))
      return report;
  }
  return report;
}

}  // namespace detail

template <class S>
AxiomReport<S> check_unanimity(const AggregatorHandle<S>& agg,
                               const Source<S>& source) {
  return detail::check_planted_entry<S>(agg, source, Axiom::Unanimity, false);
}

template <class S>
AxiomReport<S> check_zero_unanimity(const AggregatorHandle<S>& agg,
                                    const Source<S>& source) {
  return detail::check_planted_entry<S>(agg, source, Axiom::ZeroUnanimity, true);
}

template <class S>
AxiomReport<S> check_fuzzy_consensus(const AggregatorHandle<S>& agg,
                                     const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::FuzzyConsensus, source);
  const Setting& setting = agg.setting;

  auto inspect = [&](const Profile<S>& profile) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    for (int j = 0; j < setting.object_count; ++j)
      for (int t = 0; t < setting.category_count; ++t) {
        S lo = profile.voters[0](j, t);
        S hi = lo;
        for (int i = 1; i < setting.voter_count; ++i) {
          const S& v = profile.voters[static_cast<std::size_t>(i)](j, t);
          if (v < lo) lo = v;
          if (v > hi) hi = v;
        }
        const bool below = !NumericPolicy<S>::geq(out(j, t), lo);
        const bool above = !NumericPolicy<S>::leq(out(j, t), hi);
        if (below || above) {
          Witness<S> w;
          w.profile = profile;
          w.object = j;
          w.category = t;
          w.expected = below ? lo : hi;
          w.actual = out(j, t);
          w.detail = below ? "output entry below every voter's degree"
                           : "output entry above every voter's degree";
          report.verdict = Verdict::Violated;
          report.witness = std::move(w);
          return false;
        }
      }
    return true;
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!inspect(profile)) break;
  } else {
    const Sampled sampled = std::get<Sampled>(source);
    Rng rng(sampled.seed);
    for (int trial = 0; trial < sampled.count; ++trial)
      if (!inspect(sample_setting_profile<S>(agg.setting, rng))) break;
  }
  return report;
}

template <class S>
AxiomReport<S> check_non_dictatorship(const AggregatorHandle<S>& agg,
                                      const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::NonDictatorship, source);
  const Setting& setting = agg.setting;

  std::vector<bool> refuted(static_cast<std::size_t>(setting.voter_count), false);
  int remaining = setting.voter_count;

  auto inspect = [&](const Profile<S>& profile) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    for (int i = 0; i < setting.voter_count; ++i) {
      if (refuted[static_cast<std::size_t>(i)]) continue;
      if (detail::first_difference<S>(out, profile.voters[static_cast<std::size_t>(i)])) {
        refuted[static_cast<std::size_t>(i)] = true;
        --remaining;
      }
    }
    return remaining > 0;  // early exit once every voter is refuted
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!inspect(profile)) break;
  } else {
    const Sampled sampled = std::get<Sampled>(source);
    Rng rng(sampled.seed);
    for (int trial = 0; trial < sampled.count; ++trial)
      if (!inspect(sample_setting_profile<S>(agg.setting, rng))) break;
  }

  if (remaining == 0) {
    report.verdict = Verdict::Satisfied;
  } else {
    report.verdict = Verdict::Inconclusive;
    for (int i = 0; i < setting.voter_count; ++i)
      if (!refuted[static_cast<std::size_t>(i)])
        report.unrefuted_voters.push_back(i);
    report.notes.push_back(
        "listed voters matched the output on every trial; they remain "
        "dictator candidates (refutation, not proof, is all this check can "
        "deliver)");
  }
  return report;
}

template <class S>
AxiomReport<S> check_anonymity(const AggregatorHandle<S>& agg,
                               const Source<S>& source) {
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::Anonymity, source);
  const Setting& setting = agg.setting;
  const int n = setting.voter_count;

  if (n == 1) {
    report.vacuous = true;
    report.notes.push_back("a single voter admits only the identity permutation");
    return report;
  }

  Rng rng(detail::source_seed<S>(source));

  auto inspect = [&](const Profile<S>& profile,
                     const std::vector<int>& sigma) -> bool {
    ++report.trials;
    const Profile<S> permuted = permute_voters<S>(profile, sigma);
    const Classification<S> out = agg.eval(profile);
    const Classification<S> out_perm = agg.eval(permuted);
    if (auto diff = detail::first_difference<S>(out, out_perm)) {
      Witness<S> w;
      w.profile = profile;
      w.second_profile = permuted;
      w.permutation = sigma;
      w.object = diff->first;
      w.category = diff->second;
      w.expected = out(diff->first, diff->second);
      w.actual = out_perm(diff->first, diff->second);
      w.detail = "output changed under a voter permutation";
      report.verdict = Verdict::Violated;
      report.witness = std::move(w);
      return false;
    }
    return true;
  };

  auto trial_permutations = [&](const Profile<S>& profile) -> bool {
    // One random transposition, then one full random permutation.
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i;
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    std::swap(sigma[static_cast<std::size_t>(a)], sigma[static_cast<std::size_t>(b)]);
    if (!inspect(profile, sigma)) return false;
    return inspect(profile, rng.random_permutation(n));
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!trial_permutations(profile)) break;
  } else {
    const Sampled sampled = std::get<Sampled>(source);
    for (int trial = 0; trial < sampled.count; ++trial)
      if (!trial_permutations(sample_setting_profile<S>(agg.setting, rng)))
        break;
  }
  return report;
}

/// Star-setting conservation: the output's column sums must reproduce the
/// per-voter column totals (s, ..., s). Requires m = p = k.
template <class S>
AxiomReport<S> check_k_allocation(const AggregatorHandle<S>& agg,
                                  const Source<S>& source, int k) {
  const Setting& setting = agg.setting;
  if (setting.variant != Variant::Star)
    throw Error(ErrorCode::WrongSetting, "k-allocation is a star-setting check");
  if (!setting.square() || k != setting.object_count)
    throw Error(ErrorCode::WrongSetting,
                "k-allocation here requires m = p = k (column totals are "
                "forced only in the square setting)");
  detail::require_setting_match<S>(agg, source);
  AxiomReport<S> report = detail::base_report<S>(Axiom::KAllocation, source);
  const S scale = scalar_cast<S, Rational>(setting.scale);

  auto inspect = [&](const Profile<S>& profile) -> bool {
    ++report.trials;
    const Classification<S> out = agg.eval(profile);
    for (int t = 0; t < setting.category_count; ++t) {
      S sum = S(0);
      for (int j = 0; j < setting.object_count; ++j) sum += out(j, t);
      if (!NumericPolicy<S>::eq(sum, scale)) {
        Witness<S> w;
        w.profile = profile;
        w.category = t;
        w.expected = scale;
        w.actual = sum;
        w.detail = "output column total differs from the common scale";
        report.verdict = Verdict::Violated;
        report.witness = std::move(w);
        return false;
      }
    }
    return true;
  };

  if (const auto* profiles = detail::explicit_profiles<S>(source)) {
    for (const auto& profile : *profiles)
      if (!inspect(profile)) break;
  } else {
    const Sampled sampled = std::get<Sampled>(source);
    Rng rng(sampled.seed);
    for (int trial = 0; trial < sampled.count; ++trial)
      if (!inspect(sample_setting_profile<S>(agg.setting, rng))) break;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Witness replay
// ---------------------------------------------------------------------------

/// Re-evaluates the aggregator on a Violated report's stored witness and
/// returns whether the recorded violation still triggers. Reports without
/// a witness have nothing to replay and yield false.
template <class S>
bool replay_witness(const AggregatorHandle<S>& agg, const AxiomReport<S>& report) {
  if (report.verdict != Verdict::Violated || !report.witness) return false;
  const Witness<S>& w = *report.witness;
  using P = NumericPolicy<S>;

  switch (report.axiom) {
    case Axiom::OutputValidity: {
      const Classification<S> out = agg.eval(w.profile);
      return !validate_classification<S>(out, agg.setting).ok();
    }
    case Axiom::Independence: {
      if (!w.second_profile) return false;
      const Classification<S> a = agg.eval(w.profile);
      const Classification<S> b = agg.eval(*w.second_profile);
      return !P::eq(a(w.object, w.category), b(w.object, w.category));
    }
    case Axiom::Symmetry: {
      const Classification<S> out = agg.eval(w.profile);
      return !P::eq(out(w.object, w.category), out(w.object2, w.category));
    }
    case Axiom::Unanimity:
    case Axiom::ZeroUnanimity: {
      const Classification<S> out = agg.eval(w.profile);
      return !P::eq(out(w.object, w.category), w.expected);
    }
    case Axiom::FuzzyConsensus: {
      const Classification<S> out = agg.eval(w.profile);
      S lo = w.profile.voters[0](w.object, w.category);
      S hi = lo;
      for (const auto& voter : w.profile.voters) {
        const S& v = voter(w.object, w.category);
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
      return !P::geq(out(w.object, w.category), lo) ||
             !P::leq(out(w.object, w.category), hi);
    }
    case Axiom::Anonymity: {
      if (!w.second_profile) return false;
      const Classification<S> a = agg.eval(w.profile);
      const Classification<S> b = agg.eval(*w.second_profile);
      return detail::first_difference<S>(a, b).has_value();
    }
    case Axiom::KAllocation: {
      const Classification<S> out = agg.eval(w.profile);
      S sum = S(0);
      for (int j = 0; j < agg.setting.object_count; ++j) sum += out(j, w.category);
      return !P::eq(sum, w.expected);
    }
    case Axiom::NonDictatorship:
      return false;  // never Violated, nothing to replay
  }
  return false;
}

}  // namespace fcaf
