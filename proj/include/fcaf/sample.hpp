/**
 * @file sample.hpp
 * @brief Seeded generators for valid classifications and profiles, plus
 *        exhaustive enumeration of crisp classifications.
 *
 * Strategies:
 *   - BirkhoffMix (square): convex combination of k random permutation
 *     matrices with simplex coefficients — exactly doubly stochastic.
 *   - DirichletRepair (rectangular): independent simplex rows; when a column
 *     falls short of the surjectivity floor, blend by the smallest rational
 *     factor toward a uniform completion that satisfies it strictly.
 *   - VertexOnly: a random surjective crisp assignment, embedded one-hot.
 *
 * Star-setting samples are standard samples scaled by s (both signs of s
 * flip or keep the column inequality consistently).
 *
 * complete_classification fills the unfixed rows of a partially specified
 * matrix: exact transportation sampling when m = p (column equalities),
 * simplex rows with minimal blending when m > p. It is the engine behind
 * the constrained generators used by the axiom checkers.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/types.hpp"

namespace fcaf {

// ---------------------------------------------------------------------------
// Strategy configuration
// ---------------------------------------------------------------------------

struct BirkhoffMix {
  int k_terms = 4;  ///< >= 1
};

struct DirichletRepair {
  int max_attempts = 64;  ///< >= 1 rejection rounds before blending
};

struct VertexOnly {};

using Strategy = std::variant<BirkhoffMix, DirichletRepair, VertexOnly>;

struct SamplerConfig {
  Setting setting;
  std::uint64_t seed = 0;
  Strategy strategy = BirkhoffMix{};
};

inline Strategy default_strategy(const Setting& setting) {
  if (setting.square()) return BirkhoffMix{};
  return DirichletRepair{};
}

inline SamplerConfig default_sampler(const Setting& setting,
                                     std::uint64_t seed) {
  return SamplerConfig{setting, seed, default_strategy(setting)};
}

// ---------------------------------------------------------------------------
// Classification samplers (standard variant; scaling handles star)
// ---------------------------------------------------------------------------

/// Convex combination of k random m x m permutation matrices.
inline Classification<Rational> sample_square_classification(int m, Rng& rng,
                                                             int k_terms = 4) {
  if (m < 2) throw Error(ErrorCode::InvalidConfig, "square sampler needs m >= 2");
  if (k_terms < 1)
    throw Error(ErrorCode::InvalidConfig, "BirkhoffMix needs k_terms >= 1");
  const std::vector<Rational> coeff = rng.simplex(k_terms);
  Classification<Rational> out = Classification<Rational>::Constant(m, m, Rational(0));
  for (int k = 0; k < k_terms; ++k) {
    const std::vector<int> perm = rng.random_permutation(m);
    for (int j = 0; j < m; ++j)
      out(j, perm[static_cast<std::size_t>(j)]) += coeff[static_cast<std::size_t>(k)];
  }
  return out;
}

namespace detail {

/// Uniform completion rows for a rectangular block: q rows of length p whose
/// column sums exceed `needed` (componentwise) while each row sums to 1.
/// Requires sum(needed) <= q.
inline std::vector<Rational> rect_uniform_row(const std::vector<Rational>& needed,
                                              int q, int p) {
  Rational total(0);
  for (const Rational& x : needed) total += x;
  const Rational slack = (Rational(1) - total / Rational(q)) / Rational(p);
  std::vector<Rational> row(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t)
    row[static_cast<std::size_t>(t)] =
        needed[static_cast<std::size_t>(t)] / Rational(q) + slack;
  return row;
}

/// Sample q simplex rows whose column sums meet `needed`; rejection first,
/// then minimal blend toward the uniform completion.
inline std::vector<std::vector<Rational>> rect_rows(
    const std::vector<Rational>& needed, int q, int p, Rng& rng,
    int max_attempts) {
  Rational total(0);
  for (const Rational& x : needed) total += x;
  if (total > Rational(q))
    throw Error(ErrorCode::RepairFailed,
                "column requirements exceed available row mass");

  std::vector<std::vector<Rational>> rows;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    rows.clear();
    for (int r = 0; r < q; ++r) rows.push_back(rng.simplex(p));
    bool ok = true;
    for (int t = 0; t < p && ok; ++t) {
      Rational col(0);
      for (int r = 0; r < q; ++r) col += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
      if (col < needed[static_cast<std::size_t>(t)]) ok = false;
    }
    if (ok) return rows;
  }

  // Blend the last draw toward the uniform completion by the smallest
  // factor that lifts every deficient column to its requirement.
  const std::vector<Rational> uniform = rect_uniform_row(needed, q, p);
  Rational lambda(0);
  for (int t = 0; t < p; ++t) {
    Rational col(0);
    for (int r = 0; r < q; ++r) col += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
    const Rational target = needed[static_cast<std::size_t>(t)];
    if (col < target) {
      const Rational full = uniform[static_cast<std::size_t>(t)] * Rational(q);
      // full >= target by construction, so the denominator is positive.
      const Rational lt = (target - col) / (full - col);
      if (lt > lambda) lambda = lt;
    }
  }
  if (lambda > Rational(1)) lambda = Rational(1);
  for (int r = 0; r < q; ++r)
    for (int t = 0; t < p; ++t) {
      Rational& cell = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
      cell = (Rational(1) - lambda) * cell +
             lambda * uniform[static_cast<std::size_t>(t)];
    }
  return rows;
}

}  // namespace detail

/// Simplex rows with rejection, then minimal blending toward block-uniform.
inline Classification<Rational> sample_rect_classification(int m, int p, Rng& rng,
                                                           int max_attempts = 64) {
  if (!(m > p && p >= 2))
    throw Error(ErrorCode::InvalidConfig, "rectangular sampler needs m > p >= 2");
  if (max_attempts < 1)
    throw Error(ErrorCode::InvalidConfig, "DirichletRepair needs max_attempts >= 1");
  const std::vector<Rational> needed(static_cast<std::size_t>(p), Rational(1));
  const auto rows = detail::rect_rows(needed, m, p, rng, max_attempts);
  Classification<Rational> out(m, p);
  for (int j = 0; j < m; ++j)
    for (int t = 0; t < p; ++t)
      out(j, t) = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)];
  return out;
}

/// Random surjective crisp assignment, embedded as a one-hot matrix.
inline Classification<Rational> sample_vertex_classification(int m, int p, Rng& rng) {
  std::vector<int> assignment(static_cast<std::size_t>(m), 0);
  // A random injection of categories into objects guarantees surjectivity;
  // all other objects draw freely.
  const std::vector<int> order = rng.random_permutation(m);
  std::vector<bool> pinned(static_cast<std::size_t>(m), false);
  for (int t = 0; t < p; ++t) {
    assignment[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = t;
    pinned[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])] = true;
  }
  for (int j = 0; j < m; ++j)
    if (!pinned[static_cast<std::size_t>(j)])
      assignment[static_cast<std::size_t>(j)] = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
  return embed_crisp<Rational>(CrispClassification{assignment}, p);
}

/// One classification of the setting's shape (standard variant scale).
inline Classification<Rational> sample_classification(const Setting& setting,
                                                      const Strategy& strategy,
                                                      Rng& rng) {
  const int m = setting.object_count;
  const int p = setting.category_count;
  if (std::holds_alternative<BirkhoffMix>(strategy)) {
    if (m != p)
      throw Error(ErrorCode::InvalidConfig, "BirkhoffMix requires m = p");
    return sample_square_classification(m, rng, std::get<BirkhoffMix>(strategy).k_terms);
  }
  if (std::holds_alternative<DirichletRepair>(strategy)) {
    if (m <= p)
      throw Error(ErrorCode::InvalidConfig, "DirichletRepair requires m > p");
    return sample_rect_classification(m, p, rng, std::get<DirichletRepair>(strategy).max_attempts);
  }
  return sample_vertex_classification(m, p, rng);
}

/// n independent classifications; star settings scale each sample by s.
inline Profile<Rational> sample_profile(const SamplerConfig& config, Rng& rng) {
  config.setting.validate();
  Profile<Rational> out;
  out.setting = config.setting;
  out.voters.reserve(static_cast<std::size_t>(config.setting.voter_count));
  for (int i = 0; i < config.setting.voter_count; ++i) {
    Classification<Rational> c =
        sample_classification(config.setting, config.strategy, rng);
    if (config.setting.variant == Variant::Star)
      c *= config.setting.scale;
    out.voters.push_back(std::move(c));
  }
  return out;
}

inline Profile<Rational> sample_profile(const SamplerConfig& config) {
  Rng rng(config.seed);
  return sample_profile(config, rng);
}

/// The standard-variant setting with the same shape (generation happens at
/// scale 1; star samples are scaled afterwards).
inline Setting standard_shadow(const Setting& s) {
  Setting out = s;
  out.variant = Variant::Standard;
  out.scale = Rational(1);
  return out;
}

/// Scale a standard-scale rational profile into the target setting and
/// cast it into the target lane.
template <class S>
Profile<S> materialize_profile(Profile<Rational> profile, const Setting& target) {
  if (target.variant == Variant::Star) {
    for (auto& voter : profile.voters) voter *= target.scale;
  }
  profile.setting = target;
  return cast_profile<S, Rational>(profile);
}

/// One unconstrained default-strategy sample in the setting's own lane.
template <class S>
Profile<S> sample_setting_profile(const Setting& setting, Rng& rng) {
  const Setting shadow = standard_shadow(setting);
  SamplerConfig config{shadow, 0, default_strategy(shadow)};
  return materialize_profile<S>(sample_profile(config, rng), setting);
}

// ---------------------------------------------------------------------------
// Constrained completion (frozen rows)
// ---------------------------------------------------------------------------

namespace detail {

/// Exact transportation sampler: fill the free rows of a square matrix so
/// all rows sum to 1 and all columns sum to 1, entry by entry, drawing each
/// cell lattice-uniformly from its feasibility interval.
inline std::optional<Classification<Rational>> complete_square(
    const Setting& setting,
    const std::map<int, std::vector<Rational>>& fixed_rows, Rng& rng) {
  const int m = setting.object_count;
  const int p = setting.category_count;

  Classification<Rational> out = Classification<Rational>::Constant(m, p, Rational(0));
  std::vector<Rational> v(static_cast<std::size_t>(p), Rational(1));
  std::vector<int> free_rows;
  for (int j = 0; j < m; ++j) {
    auto it = fixed_rows.find(j);
    if (it == fixed_rows.end()) {
      free_rows.push_back(j);
      continue;
    }
    for (int t = 0; t < p; ++t) {
      out(j, t) = it->second[static_cast<std::size_t>(t)];
      v[static_cast<std::size_t>(t)] -= out(j, t);
    }
  }
  for (const Rational& rem : v)
    if (rem < Rational(0)) return std::nullopt;  // column already over 1

  int rows_remaining = static_cast<int>(free_rows.size());
  for (int j : free_rows) {
    Rational u(1);
    for (int t = 0; t < p; ++t) {
      Rational suffix(0);  // column mass still open to the right of t
      for (int t2 = t + 1; t2 < p; ++t2) suffix += v[static_cast<std::size_t>(t2)];
      const Rational rows_after(rows_remaining - 1);
      // z must leave the rest of this row fillable (u - z <= suffix) and
      // leave column t fillable by the rows below (v[t] - z <= rows_after).
      Rational lo = u - suffix;
      if (lo < v[static_cast<std::size_t>(t)] - rows_after)
        lo = v[static_cast<std::size_t>(t)] - rows_after;
      if (lo < Rational(0)) lo = Rational(0);
      Rational hi = u < v[static_cast<std::size_t>(t)] ? u : v[static_cast<std::size_t>(t)];
      if (lo > hi) return std::nullopt;
      const Rational z = rng.rational_in(lo, hi);
      out(j, t) = z;
      u -= z;
      v[static_cast<std::size_t>(t)] -= z;
    }
    --rows_remaining;
  }
  return out;
}

}  // namespace detail

/// Fill the rows of a standard-variant matrix not present in `fixed_rows`
/// so the whole matrix is valid. Returns nullopt when the frozen rows admit
/// no completion (or none was found within max_attempts for m > p).
inline std::optional<Classification<Rational>> complete_classification(
    const Setting& setting,
    const std::map<int, std::vector<Rational>>& fixed_rows, Rng& rng,
    int max_attempts = 10000) {
  const int m = setting.object_count;
  const int p = setting.category_count;
  for (const auto& [j, row] : fixed_rows) {
    if (j < 0 || j >= m)
      throw Error(ErrorCode::IndexOutOfRange, "fixed row index out of range");
    if (static_cast<int>(row.size()) != p)
      throw Error(ErrorCode::DimensionMismatch, "fixed row has wrong length");
    Rational sum(0);
    for (const Rational& x : row) {
      if (x < Rational(0) || x > Rational(1)) return std::nullopt;
      sum += x;
    }
    if (!(sum == Rational(1))) return std::nullopt;
  }

  if (setting.square()) return detail::complete_square(setting, fixed_rows, rng);

  // Rectangular: free rows are simplex draws; columns must reach
  // 1 - (fixed contribution).
  std::vector<Rational> needed(static_cast<std::size_t>(p), Rational(1));
  std::vector<int> free_rows;
  Classification<Rational> out = Classification<Rational>::Constant(m, p, Rational(0));
  for (int j = 0; j < m; ++j) {
    auto it = fixed_rows.find(j);
    if (it == fixed_rows.end()) {
      free_rows.push_back(j);
      continue;
    }
    for (int t = 0; t < p; ++t) {
      out(j, t) = it->second[static_cast<std::size_t>(t)];
      needed[static_cast<std::size_t>(t)] -= out(j, t);
    }
  }
  for (Rational& x : needed)
    if (x < Rational(0)) x = Rational(0);
  const int q = static_cast<int>(free_rows.size());
  if (q == 0) {
    Rational total(0);
    for (const Rational& x : needed) total += x;
    if (!total.is_zero()) return std::nullopt;
    return out;
  }
  Rational total(0);
  for (const Rational& x : needed) total += x;
  if (total > Rational(q)) return std::nullopt;

  const auto rows = detail::rect_rows(needed, q, p, rng, max_attempts);
  for (int r = 0; r < q; ++r)
    for (int t = 0; t < p; ++t)
      out(free_rows[static_cast<std::size_t>(r)], t) =
          rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(t)];
  return out;
}

// ---------------------------------------------------------------------------
// Crisp enumeration
// ---------------------------------------------------------------------------

/// Number of surjections from m objects onto p categories (p! * S(m,p)),
/// by inclusion-exclusion.
inline BigInt surjection_count(int m, int p) {
  BigInt total(0);
  BigInt binom(1);  // C(p, i)
  for (int i = 0; i <= p; ++i) {
    BigInt term = binom;
    BigInt base(p - i);
    BigInt power(1);
    for (int e = 0; e < m; ++e) power *= base;
    term *= power;
    if (i % 2 == 0)
      total += term;
    else
      total -= term;
    binom = binom * (p - i) / (i + 1);
  }
  return total;
}

/// All surjective assignments of m objects to p categories, lexicographic.
inline std::vector<CrispClassification> enumerate_crisp_classifications(int m, int p) {
  if (!(m >= p && p >= 1))
    throw Error(ErrorCode::InvalidConfig, "enumeration needs m >= p >= 1");
  const BigInt count = surjection_count(m, p);
  if (count > BigInt(10000000))
    throw Error(ErrorCode::TooLarge,
                "surjection count " + count.str() + " exceeds 10^7");

  std::vector<CrispClassification> out;
  out.reserve(static_cast<std::size_t>(count));
  std::vector<int> assignment(static_cast<std::size_t>(m), 0);
  std::vector<int> uses(static_cast<std::size_t>(p), 0);
  int unused = p;

  auto dfs = [&](auto&& self, int j) -> void {
    if (j == m) {
      out.push_back(CrispClassification{assignment});
      return;
    }
    // Surjectivity is still reachable iff the remaining slots can cover the
    // categories not yet used.
    for (int t = 0; t < p; ++t) {
      const int new_unused = unused - (uses[static_cast<std::size_t>(t)] == 0 ? 1 : 0);
      if (new_unused > m - j - 1) continue;
      assignment[static_cast<std::size_t>(j)] = t;
      ++uses[static_cast<std::size_t>(t)];
      unused = new_unused;
      self(self, j + 1);
      --uses[static_cast<std::size_t>(t)];
      if (uses[static_cast<std::size_t>(t)] == 0) ++unused;
    }
  };
  dfs(dfs, 0);
  return out;
}

}  // namespace fcaf
