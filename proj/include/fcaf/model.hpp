/**
 * @file model.hpp
 * @brief Validation of classification constraints and profile utilities.
 *
 * Validity of an m x p classification under a setting with scale s:
 *   - standard entries lie in [0,1] (star entries are unbounded),
 *   - every row sums to s exactly,
 *   - every column sums to >= 1 (standard), >= s (star, s >= 0) or <= s
 *     (star, s < 0).
 * When m = p the row equalities force the column inequalities into
 * equalities, so no separate doubly-stochastic check is needed.
 *
 * Scan order is fixed (dimensions, entries row-major, rows ascending,
 * columns ascending) so the first reported violation is deterministic.
 */

#pragma once

#include <string>
#include <vector>

#include "fcaf/policy.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

template <class S>
struct ValidationResult {
  enum class Kind { Ok, DimensionMismatch, EntryRange, RowSum, ColumnSum };

  Kind kind = Kind::Ok;
  int voter = -1;   ///< set by validate_profile, -1 for single classifications
  int row = -1;     ///< offending row (EntryRange, RowSum)
  int column = -1;  ///< offending column (EntryRange, ColumnSum)
  S actual = S(0);  ///< offending entry or sum

  bool ok() const { return kind == Kind::Ok; }

  std::string describe() const {
    switch (kind) {
      case Kind::Ok:
        return "ok";
      case Kind::DimensionMismatch:
        return "dimension mismatch";
      case Kind::EntryRange:
        return "entry (" + std::to_string(row) + "," + std::to_string(column) +
               ") out of [0,1]: " + NumericPolicy<S>::str(actual);
      case Kind::RowSum:
        return "row " + std::to_string(row) +
               " sum: " + NumericPolicy<S>::str(actual);
      case Kind::ColumnSum:
        return "column " + std::to_string(column) +
               " sum: " + NumericPolicy<S>::str(actual);
    }
    return "unknown";
  }
};

template <class S>
ValidationResult<S> validate_classification(const Classification<S>& c,
                                            const Setting& setting) {
  using Result = ValidationResult<S>;
  using Kind = typename Result::Kind;
  using P = NumericPolicy<S>;
  setting.validate();

  const int m = setting.object_count;
  const int p = setting.category_count;
  if (c.rows() != m || c.cols() != p)
    return Result{Kind::DimensionMismatch, -1, -1, -1, S(0)};

  const S scale = scalar_cast<S, Rational>(setting.scale);

  if (setting.variant == Variant::Standard) {
    for (int j = 0; j < m; ++j)
      for (int t = 0; t < p; ++t) {
        const S& v = c(j, t);
        if (!P::geq(v, S(0)) || !P::leq(v, S(1)))
          return Result{Kind::EntryRange, -1, j, t, v};
      }
  }

  for (int j = 0; j < m; ++j) {
    S sum = S(0);
    for (int t = 0; t < p; ++t) sum += c(j, t);
    if (!P::eq(sum, scale)) return Result{Kind::RowSum, -1, j, -1, sum};
  }

  const bool lower_bound =
      setting.variant == Variant::Standard || P::geq(scale, S(0));
  const S column_target =
      setting.variant == Variant::Standard ? S(1) : scale;
  for (int t = 0; t < p; ++t) {
    S sum = S(0);
    for (int j = 0; j < m; ++j) sum += c(j, t);
    const bool ok = lower_bound ? P::geq(sum, column_target)
                                : P::leq(sum, column_target);
    if (!ok) return Result{Kind::ColumnSum, -1, -1, t, sum};
  }

  return Result{};
}

/// Validate the shared setting, the voter count, and every voter in order.
template <class S>
ValidationResult<S> validate_profile(const Profile<S>& profile) {
  using Result = ValidationResult<S>;
  using Kind = typename Result::Kind;
  profile.setting.validate();
  if (profile.voter_count() != profile.setting.voter_count)
    return Result{Kind::DimensionMismatch, -1, -1, -1, S(0)};
  for (int i = 0; i < profile.voter_count(); ++i) {
    Result r = validate_classification<S>(
        profile.voters[static_cast<std::size_t>(i)], profile.setting);
    if (!r.ok()) {
      r.voter = i;
      return r;
    }
  }
  return Result{};
}

// ---------------------------------------------------------------------------
// Profile utilities
// ---------------------------------------------------------------------------

/// Restriction to one object: entry (i,t) is voter i's degree for category t.
template <class S>
Classification<S> restrict(const Profile<S>& profile, int object_index) {
  const int m = profile.setting.object_count;
  if (object_index < 0 || object_index >= m)
    throw Error(ErrorCode::IndexOutOfRange,
                "object index " + std::to_string(object_index) +
                    " outside [0," + std::to_string(m) + ")");
  const int n = profile.voter_count();
  const int p = profile.setting.category_count;
  Classification<S> out(n, p);
  for (int i = 0; i < n; ++i)
    out.row(i) = profile.voters[static_cast<std::size_t>(i)].row(object_index);
  return out;
}

/// True iff sigma is a bijection on {0, ..., n-1}.
inline bool is_permutation(const std::vector<int>& sigma, int n) {
  if (static_cast<int>(sigma.size()) != n) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

/// Voter i of the result is voter sigma[i] of the input.
template <class S>
Profile<S> permute_voters(const Profile<S>& profile,
                          const std::vector<int>& sigma) {
  const int n = profile.voter_count();
  if (!is_permutation(sigma, n))
    throw Error(ErrorCode::InvalidPermutation,
                "sigma is not a permutation of the voter indices");
  Profile<S> out;
  out.setting = profile.setting;
  out.voters.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out.voters.push_back(
        profile.voters[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])]);
  return out;
}

/// One-hot embedding of a crisp assignment; requires surjectivity onto the
/// p categories so the result is a valid standard classification.
template <class S = Rational>
Classification<S> embed_crisp(const CrispClassification& c, int p) {
  const int m = c.object_count();
  std::vector<bool> hit(static_cast<std::size_t>(p), false);
  for (int j = 0; j < m; ++j) {
    const int t = c.assignment[static_cast<std::size_t>(j)];
    if (t < 0 || t >= p)
      throw Error(ErrorCode::IndexOutOfRange,
                  "category " + std::to_string(t) + " outside [0," +
                      std::to_string(p) + ")");
    hit[static_cast<std::size_t>(t)] = true;
  }
  for (int t = 0; t < p; ++t)
    if (!hit[static_cast<std::size_t>(t)])
      throw Error(ErrorCode::NotSurjective,
                  "category " + std::to_string(t) + " is never used");
  Classification<S> out = Classification<S>::Constant(m, p, S(0));
  for (int j = 0; j < m; ++j)
    out(j, c.assignment[static_cast<std::size_t>(j)]) = S(1);
  return out;
}

/// m x m permutation matrix with entry (j, perm[j]) = 1.
template <class S = Rational>
Classification<S> permutation_matrix(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  if (!is_permutation(perm, m))
    throw Error(ErrorCode::InvalidPermutation,
                "object-to-category map is not a bijection");
  return embed_crisp<S>(CrispClassification{perm}, m);
}

}  // namespace fcaf
