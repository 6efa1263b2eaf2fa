/**
 * @file characterize.hpp
 * @brief Weight recovery from black-box aggregators and WAM membership fits.
 *
 * Recovery probes the aggregator with crisp permutation profiles built
 * around an agreeing bloc: in the deviant family, voter i files the cyclic
 * shift while everyone else files the identity, so the output entry at
 * (j, j+1 mod p) is the mass the rule grants voter i in category j+1. The
 * consistency family swaps the roles (voter i identity, bloc cyclic) and
 * reads the same weight at (t, t). An additive rule must produce identical
 * readings in both families; a mismatch is reported as NonAdditive.
 *
 * For m > p the square probe block sits on the first p objects and the
 * remaining rows are uniform, so column surjectivity holds and independent
 * rules ignore the filler.
 *
 * fit_wam first tries recovery + cross-category equality; when either
 * fails it falls back to an equality-constrained least-squares fit with
 * nonnegativity enforced by active-set clamping. The residual is always
 * measured on a fresh sample drawn from a seed derived from the source
 * seed, so the fit never grades itself on its own training data.
 *
 * Weight comparisons are exact in the rational lane and use tolerance 1e-9
 * in the double lane (looser than the 1e-12 axiom tolerance: probe readings
 * of a root-extracting rule carry that much noise).
 */

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcaf/aggregate.hpp"
#include "fcaf/axioms.hpp"
#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/sample.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

/// Per-category weight readings: entry (i, t) is voter i's weight for
/// category t. Notes carry recovery warnings (failed validity probes,
/// columns not summing to 1).
template <class S>
struct WeightMatrix {
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> w;
  std::vector<std::string> notes;
};

template <class S>
struct WeightEqualityResult {
  bool equal = false;
  Weights<S> weights;  ///< the common column when equal
  int category_a = -1;
  int category_b = -1;
  int voter = -1;
  S value_a = S(0);
  S value_b = S(0);
};

template <class S>
struct FitReport {
  Weights<S> weights;
  S max_residual = S(0);
  bool is_wam = false;
  bool degenerate_weights = false;
  bool used_least_squares = false;
  std::optional<Profile<S>> witness;  ///< profile achieving max_residual
  std::optional<Weights<S>> unconstrained_weights;  ///< surfaced negative fit
  std::vector<std::string> notes;
};

namespace detail {

/// Recovery/equality tolerance: exact (rational) or 1e-9 (double).
template <class S>
bool weight_eq(const S& a, const S& b) {
  if constexpr (NumericPolicy<S>::kExact) {
    return a == b;
  } else {
    return NumericPolicy<S>::abs(a - b) <= 1e-9;
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Probe profiles
// ---------------------------------------------------------------------------

/// Crisp profile of permutation matrices: voter i files the permutation
/// matrix of assignment[i]. Square settings only.
inline Profile<Rational> probe_profile(
    int n, int m, const std::vector<std::vector<int>>& assignment) {
  if (n < 1 || static_cast<int>(assignment.size()) != n)
    throw Error(ErrorCode::LengthMismatch,
                "need one permutation per voter");
  Profile<Rational> profile;
  profile.setting = Setting{n, m, m, Variant::Standard, Rational(1)};
  profile.setting.validate();
  profile.voters.reserve(static_cast<std::size_t>(n));
  for (const auto& perm : assignment) {
    if (static_cast<int>(perm.size()) != m)
      throw Error(ErrorCode::RequiresSquareSetting,
                  "permutation length must equal the object count");
    profile.voters.push_back(permutation_matrix<Rational>(perm));
  }
  return profile;
}

namespace detail {

/// Probe for a square block of size p inside an m x p setting: listed
/// voters file the cyclic shift on the block, the rest the identity;
/// objects past the block get uniform rows.
template <class S>
Profile<S> bloc_probe(const Setting& setting, int deviant,
                      bool deviant_cyclic) {
  const int n = setting.voter_count;
  const int m = setting.object_count;
  const int p = setting.category_count;
  Profile<Rational> profile;
  profile.setting = setting;
  profile.voters.reserve(static_cast<std::size_t>(n));
  const Rational uniform(1, p);
  for (int i = 0; i < n; ++i) {
    const bool cyclic = (i == deviant) == deviant_cyclic;
    Classification<Rational> c = Classification<Rational>::Constant(m, p, Rational(0));
    for (int j = 0; j < p; ++j) c(j, cyclic ? (j + 1) % p : j) = Rational(1);
    for (int j = p; j < m; ++j)
      for (int t = 0; t < p; ++t) c(j, t) = uniform;
    profile.voters.push_back(std::move(c));
  }
  return cast_profile<S, Rational>(profile);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Recovery
// ---------------------------------------------------------------------------

template <class S>
WeightMatrix<S> recover_weight_matrix(const AggregatorHandle<S>& agg) {
  const Setting& setting = agg.setting;
  if (setting.variant != Variant::Standard)
    throw Error(ErrorCode::WrongSetting,
                "probe recovery operates in the standard setting");
  const int n = setting.voter_count;
  const int p = setting.category_count;

  // Evaluate both probe families for every voter.
  std::vector<Classification<S>> deviant_out;    // voter i cyclic, bloc identity
  std::vector<Classification<S>> consistency_out;  // voter i identity, bloc cyclic
  std::vector<Profile<S>> probes;
  deviant_out.reserve(static_cast<std::size_t>(n));
  consistency_out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Profile<S> a = detail::bloc_probe<S>(setting, i, true);
    Profile<S> b = detail::bloc_probe<S>(setting, i, false);
    deviant_out.push_back(agg.eval(a));
    consistency_out.push_back(agg.eval(b));
    probes.push_back(std::move(a));
    probes.push_back(std::move(b));
  }

  WeightMatrix<S> wm;
  wm.w.resize(n, p);

  // Preconditions on the probe set. A rule that pollutes unanimous-zero
  // positions invalidates the readings outright (the reads rely on the
  // bloc contributing nothing at the read position); abort. A rule whose
  // probe outputs are merely invalid (e.g. rows not summing to 1) still
  // produces meaningful per-position readings, so warn and continue.
  bool validity_warned = false;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const Profile<S>& probe = probes[k];
    const Classification<S>& out = k % 2 == 0 ? deviant_out[k / 2] : consistency_out[k / 2];
    for (int j = 0; j < setting.object_count; ++j)
      for (int t = 0; t < p; ++t) {
        bool all_zero = true;
        for (int i = 0; i < n && all_zero; ++i)
          all_zero = NumericPolicy<S>::eq(probe.voters[static_cast<std::size_t>(i)](j, t), S(0));
        if (all_zero && !detail::weight_eq<S>(out(j, t), S(0)))
          throw Error(ErrorCode::PreconditionFailed,
                      "probe outputs violate zero unanimity at (" +
                          std::to_string(j) + "," + std::to_string(t) +
                          "); readings would be polluted");
      }
    if (!validity_warned && !validate_classification<S>(out, setting).ok()) {
      wm.notes.push_back(
          "probe outputs are not valid classifications; readings taken "
          "anyway (a per-category rule behaves this way)");
      validity_warned = true;
    }
  }

  // Readings. Deviant family: weight for category (j+1 mod p) sits at
  // (j, j+1 mod p). Consistency family: weight for category t sits at (t, t).
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) {
      const int t = (j + 1) % p;
      const S from_deviant = deviant_out[static_cast<std::size_t>(i)](j, t);
      const S from_consistency = consistency_out[static_cast<std::size_t>(i)](t, t);
      if (!detail::weight_eq<S>(from_deviant, from_consistency))
        throw Error(ErrorCode::NonAdditive,
                    "probe families disagree for voter " + std::to_string(i) +
                        ", category " + std::to_string(t) + ": " +
                        NumericPolicy<S>::str(from_deviant) + " vs " +
                        NumericPolicy<S>::str(from_consistency));
      wm.w(i, t) = from_deviant;
    }
  }

  for (int t = 0; t < p; ++t) {
    S sum = S(0);
    for (int i = 0; i < n; ++i) sum += wm.w(i, t);
    if (!detail::weight_eq<S>(sum, S(1))) {
      wm.notes.push_back("column " + std::to_string(t) +
                         " of the recovered weights sums to " +
                         NumericPolicy<S>::str(sum) + ", not 1");
    }
  }
  return wm;
}

template <class S>
WeightEqualityResult<S> check_weight_equality(const WeightMatrix<S>& wm) {
  WeightEqualityResult<S> result;
  const int n = static_cast<int>(wm.w.rows());
  const int p = static_cast<int>(wm.w.cols());
  for (int t = 1; t < p; ++t)
    for (int i = 0; i < n; ++i)
      if (!detail::weight_eq<S>(wm.w(i, 0), wm.w(i, t))) {
        result.equal = false;
        result.category_a = 0;
        result.category_b = t;
        result.voter = i;
        result.value_a = wm.w(i, 0);
        result.value_b = wm.w(i, t);
        return result;
      }
  result.equal = true;
  result.weights = wm.w.col(0);
  return result;
}

// ---------------------------------------------------------------------------
// Least-squares fallback and fit
// ---------------------------------------------------------------------------

namespace detail {

/// Gaussian elimination with abs-max pivoting; exact for rationals.
template <class S>
std::optional<Eigen::Matrix<S, Eigen::Dynamic, 1>> solve_linear(
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> a,
    Eigen::Matrix<S, Eigen::Dynamic, 1> b) {
  const int n = static_cast<int>(a.rows());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    S best = S(0);
    for (int r = col; r < n; ++r) {
      const S mag = NumericPolicy<S>::abs(a(r, col));
      if (pivot == -1 || best < mag) {
        pivot = r;
        best = mag;
      }
    }
    if (NumericPolicy<S>::negligible(a(pivot, col))) return std::nullopt;
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(b(pivot), b(col));
    }
    for (int r = col + 1; r < n; ++r) {
      const S factor = a(r, col) / a(col, col);
      a.row(r) -= factor * a.row(col);
      b(r) -= factor * b(col);
    }
  }
  Eigen::Matrix<S, Eigen::Dynamic, 1> x(n);
  for (int r = n - 1; r >= 0; --r) {
    S acc = b(r);
    for (int c = r + 1; c < n; ++c) acc -= a(r, c) * x(c);
    x(r) = acc / a(r, r);
  }
  return x;
}

/// Minimize ||A w - b||^2 over the voters in `free_set` subject to
/// sum(w) = 1 (others pinned at 0), via the KKT system of the normal
/// equations. gram = A^T A, moment = A^T b.
template <class S>
std::optional<Weights<S>> solve_constrained(
    const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& gram,
    const Eigen::Matrix<S, Eigen::Dynamic, 1>& moment,
    const std::vector<int>& free_set, int n) {
  const int f = static_cast<int>(free_set.size());
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> kkt =
      Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Constant(f + 1, f + 1, S(0));
  Eigen::Matrix<S, Eigen::Dynamic, 1> rhs(f + 1);
  for (int r = 0; r < f; ++r) {
    for (int c = 0; c < f; ++c)
      kkt(r, c) = S(2) * gram(free_set[static_cast<std::size_t>(r)],
                              free_set[static_cast<std::size_t>(c)]);
    kkt(r, f) = S(1);
    kkt(f, r) = S(1);
    rhs(r) = S(2) * moment(free_set[static_cast<std::size_t>(r)]);
  }
  rhs(f) = S(1);
  auto solution = solve_linear<S>(kkt, rhs);
  if (!solution) return std::nullopt;
  Weights<S> w = Weights<S>::Constant(n, S(0));
  for (int r = 0; r < f; ++r)
    w(free_set[static_cast<std::size_t>(r)]) = (*solution)(r);
  return w;
}

template <class S>
S fit_residual_sq(const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>& gram,
                  const Eigen::Matrix<S, Eigen::Dynamic, 1>& moment,
                  const S& btb, const Weights<S>& w) {
  // ||Aw - b||^2 = w^T G w - 2 w^T m + b^T b
  S acc = btb;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    acc -= S(2) * w(i) * moment(i);
    for (Eigen::Index k = 0; k < w.size(); ++k) acc += w(i) * gram(i, k) * w(k);
  }
  return acc;
}

}  // namespace detail

/// Does recovery-then-equality describe the aggregator, and if not, what is
/// the best least-squares WAM? The residual is always measured on a fresh
/// sample (derived seed), and is_wam holds iff it vanishes under the lane's
/// weight tolerance.
template <class S>
FitReport<S> fit_wam(const AggregatorHandle<S>& agg, const Sampled& source) {
  const Setting& setting = agg.setting;
  const int n = setting.voter_count;
  FitReport<S> report;

  if (setting.object_count < 3)
    report.notes.push_back(
        "m < 3: outside the characterization regime, the fit is evidence "
        "only (nonlinear rules exist at m = p = 2)");

  bool have_weights = false;
  if (setting.variant == Variant::Standard) {
    try {
      WeightMatrix<S> wm = recover_weight_matrix<S>(agg);
      for (auto& note : wm.notes) report.notes.push_back(std::move(note));
      const WeightEqualityResult<S> eq = check_weight_equality<S>(wm);
      if (eq.equal) {
        report.weights = eq.weights;
        have_weights = true;
      } else {
        report.notes.push_back(
            "recovered weights differ across categories (voter " +
            std::to_string(eq.voter) + ": " +
            NumericPolicy<S>::str(eq.value_a) + " for category " +
            std::to_string(eq.category_a) + " vs " +
            NumericPolicy<S>::str(eq.value_b) + " for category " +
            std::to_string(eq.category_b) + "); using least squares");
      }
    } catch (const Error& e) {
      report.notes.push_back(std::string("probe recovery unavailable (") +
                             e.what() + "); using least squares");
    }
  } else {
    report.notes.push_back("star setting: probe recovery is defined for the "
                           "standard setting; using least squares");
  }

  const int trial_count = source.count > 0 ? source.count : 1;

  if (!have_weights) {
    report.used_least_squares = true;
    // Accumulate normal equations over the training sample.
    Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> gram =
        Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, S(0));
    Eigen::Matrix<S, Eigen::Dynamic, 1> moment =
        Eigen::Matrix<S, Eigen::Dynamic, 1>::Constant(n, S(0));
    S btb = S(0);
    Rng rng(source.seed);
    for (int trial = 0; trial < trial_count; ++trial) {
      const Profile<S> profile = sample_setting_profile<S>(setting, rng);
      const Classification<S> out = agg.eval(profile);
      for (int j = 0; j < setting.object_count; ++j)
        for (int t = 0; t < setting.category_count; ++t) {
          const S y = out(j, t);
          btb += y * y;
          for (int i = 0; i < n; ++i) {
            const S xi = profile.voters[static_cast<std::size_t>(i)](j, t);
            moment(i) += xi * y;
            for (int k = i; k < n; ++k) {
              const S xk = profile.voters[static_cast<std::size_t>(k)](j, t);
              gram(i, k) += xi * xk;
              if (k != i) gram(k, i) = gram(i, k);
            }
          }
        }
    }

    std::vector<int> free_set;
    for (int i = 0; i < n; ++i) free_set.push_back(i);
    std::optional<Weights<S>> unconstrained =
        detail::solve_constrained<S>(gram, moment, free_set, n);
    std::optional<Weights<S>> current = unconstrained;

    // Active-set clamping: pin the most negative weight to zero, re-solve.
    while (current) {
      int worst = -1;
      for (std::size_t r = 0; r < free_set.size(); ++r) {
        const int i = free_set[r];
        if ((*current)(i) < S(0) &&
            (worst == -1 || (*current)(i) < (*current)(worst)))
          worst = i;
      }
      if (worst == -1) break;
      free_set.erase(std::find(free_set.begin(), free_set.end(), worst));
      if (free_set.empty()) {
        current.reset();
        break;
      }
      current = detail::solve_constrained<S>(gram, moment, free_set, n);
    }

    if (!current) {
      report.weights = uniform_weights<S>(n);
      report.notes.push_back(
          "least-squares system was singular; reporting the uniform weights");
    } else {
      report.weights = *current;
      const bool clamped = static_cast<int>(free_set.size()) != n;
      if (clamped && unconstrained) {
        const S res_c = detail::fit_residual_sq<S>(gram, moment, btb, *current);
        const S res_u = detail::fit_residual_sq<S>(gram, moment, btb, *unconstrained);
        if (res_u < res_c && !detail::weight_eq<S>(res_u, res_c)) {
          report.unconstrained_weights = *unconstrained;
          report.notes.push_back(
              "the unconstrained fit uses negative weights and achieves a "
              "materially smaller squared residual; both solutions reported, "
              "the nonnegative one is primary");
        }
      }
    }
  }

  // Residual pass on an independent fresh sample.
  Rng fresh(source.seed ^ 0x9e3779b97f4a7c15ull);
  for (int trial = 0; trial < trial_count; ++trial) {
    const Profile<S> profile = sample_setting_profile<S>(setting, fresh);
    const Classification<S> out = agg.eval(profile);
    const Classification<S> fitted = wam_aggregate<S>(report.weights, profile);
    S worst = S(0);
    for (int j = 0; j < setting.object_count; ++j)
      for (int t = 0; t < setting.category_count; ++t) {
        const S dev = NumericPolicy<S>::abs(out(j, t) - fitted(j, t));
        if (worst < dev) worst = dev;
      }
    if (!report.witness || report.max_residual < worst) {
      if (report.max_residual < worst) report.max_residual = worst;
      report.witness = profile;
    }
  }

  report.is_wam = detail::weight_eq<S>(report.max_residual, S(0));
  report.degenerate_weights = degenerate<S>(report.weights);
  if (report.degenerate_weights)
    report.notes.push_back("fitted weights are degenerate (a dictatorship)");
  return report;
}

}  // namespace fcaf
