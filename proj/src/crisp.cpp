#include "fcaf/crisp.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace fcaf {

namespace {

std::size_t checked_pow(std::size_t base, int exp, std::size_t cap) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

ElementaryTable::ElementaryTable(int n, int p, int fill)
    : voter_count(n), category_count(p) {
  entries.assign(tuple_count(), fill);
}

std::size_t ElementaryTable::tuple_count() const {
  std::size_t out = 1;
  for (int i = 0; i < voter_count; ++i) out *= static_cast<std::size_t>(category_count);
  return out;
}

std::size_t ElementaryTable::encode(const std::vector<int>& tuple) const {
  if (static_cast<int>(tuple.size()) != voter_count)
    throw Error(ErrorCode::DimensionMismatch, "tuple arity does not match voter count");
  std::size_t index = 0;
  std::size_t radix = 1;
  for (int i = 0; i < voter_count; ++i) {
    if (tuple[i] < 0 || tuple[i] >= category_count)
      throw Error(ErrorCode::IndexOutOfRange, "tuple entry outside category range");
    index += static_cast<std::size_t>(tuple[i]) * radix;
    radix *= static_cast<std::size_t>(category_count);
  }
  return index;
}

std::vector<int> ElementaryTable::decode(std::size_t index) const {
  std::vector<int> tuple(voter_count);
  for (int i = 0; i < voter_count; ++i) {
    tuple[i] = static_cast<int>(index % static_cast<std::size_t>(category_count));
    index /= static_cast<std::size_t>(category_count);
  }
  return tuple;
}

CrispCAF::CrispCAF(int n, int m, int p)
    : voter_count(n), object_count(m), category_count(p) {
  tables.assign(static_cast<std::size_t>(m), ElementaryTable(n, p));
}

CrispClassification CrispCAF::apply(const std::vector<CrispClassification>& profile) const {
  if (static_cast<int>(profile.size()) != voter_count)
    throw Error(ErrorCode::DimensionMismatch, "profile voter count does not match rule");
  for (const auto& c : profile)
    if (static_cast<int>(c.assignment.size()) != object_count)
      throw Error(ErrorCode::DimensionMismatch, "voter assignment length does not match object count");
  CrispClassification out;
  out.assignment.resize(static_cast<std::size_t>(object_count));
  std::vector<int> tuple(static_cast<std::size_t>(voter_count));
  for (int j = 0; j < object_count; ++j) {
    for (int i = 0; i < voter_count; ++i) tuple[static_cast<std::size_t>(i)] = profile[static_cast<std::size_t>(i)].assignment[static_cast<std::size_t>(j)];
    out.assignment[static_cast<std::size_t>(j)] = tables[static_cast<std::size_t>(j)].at(tuple);
  }
  return out;
}

std::vector<CrispCAF> enumerate_valid_cafs(int n, int m, int p, std::uint64_t budget,
                                           CrispSearchStats* stats) {
  if (n < 1 || m < 1 || p < 2)
    throw Error(ErrorCode::InvalidConfig, "need n >= 1, m >= 1, p >= 2");
  if (m != p)
    throw Error(ErrorCode::RequiresSquareSetting,
                "crisp enumeration supports square instances (m == p) only");
  const std::size_t tuple_cap = 4096;
  const std::size_t tuples = checked_pow(static_cast<std::size_t>(p), n, tuple_cap);
  if (tuples > tuple_cap)
    throw Error(ErrorCode::TooLarge, "tuple space exceeds desk scale");

  // Decoded tuples and the joint-realizability relation: two tuples at
  // distinct objects can occur in a common bijective-voter profile exactly
  // when they differ in every coordinate.
  std::vector<std::vector<int>> decoded(tuples);
  {
    ElementaryTable probe(n, p);
    for (std::size_t idx = 0; idx < tuples; ++idx) decoded[idx] = probe.decode(idx);
  }
  std::vector<std::vector<char>> compatible(tuples, std::vector<char>(tuples, 0));
  for (std::size_t a = 0; a < tuples; ++a)
    for (std::size_t b = 0; b < tuples; ++b) {
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) ok = decoded[a][static_cast<std::size_t>(i)] != decoded[b][static_cast<std::size_t>(i)];
      compatible[a][b] = ok ? 1 : 0;
    }

  // Table state: unanimous tuples pinned, every other entry free.
  std::vector<std::vector<int>> table(static_cast<std::size_t>(m), std::vector<int>(tuples, -1));
  std::vector<std::size_t> diagonal(static_cast<std::size_t>(p));
  {
    ElementaryTable probe(n, p);
    for (int t = 0; t < p; ++t)
      diagonal[static_cast<std::size_t>(t)] = probe.encode(std::vector<int>(static_cast<std::size_t>(n), t));
  }
  for (int j = 0; j < m; ++j)
    for (int t = 0; t < p; ++t) table[static_cast<std::size_t>(j)][diagonal[static_cast<std::size_t>(t)]] = t;

  std::vector<std::pair<int, std::size_t>> free_entries;  // (object, tuple index)
  for (int j = 0; j < m; ++j)
    for (std::size_t idx = 0; idx < tuples; ++idx)
      if (table[static_cast<std::size_t>(j)][idx] < 0) free_entries.emplace_back(j, idx);

  std::vector<CrispCAF> survivors;
  CrispSearchStats local;
  const auto conflicts = [&](int j, std::size_t idx, int t) {
    for (int j2 = 0; j2 < m; ++j2) {
      if (j2 == j) continue;
      const auto& row = table[static_cast<std::size_t>(j2)];
      const auto& comp = compatible[idx];
      for (std::size_t idx2 = 0; idx2 < tuples; ++idx2)
        if (row[idx2] == t && comp[idx2]) return true;
    }
    return false;
  };

  const auto emit = [&]() {
    CrispCAF caf(n, m, p);
    for (int j = 0; j < m; ++j) caf.tables[static_cast<std::size_t>(j)].entries = table[static_cast<std::size_t>(j)];
    survivors.push_back(std::move(caf));
    ++local.survivors;
  };

  const auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (depth == free_entries.size()) {
      emit();
      return;
    }
    const auto [j, idx] = free_entries[depth];
    for (int t = 0; t < p; ++t) {
      ++local.nodes_expanded;
      if (local.nodes_expanded > budget) {
        if (stats) *stats = local;
        throw Error(ErrorCode::BudgetExceeded,
                    "search budget exhausted after " + std::to_string(local.nodes_expanded) +
                        " node expansions (" + std::to_string(local.survivors) + " survivors so far)");
      }
      if (conflicts(j, idx, t)) continue;
      table[static_cast<std::size_t>(j)][idx] = t;
      self(self, depth + 1);
      table[static_cast<std::size_t>(j)][idx] = -1;
    }
  };
  dfs(dfs, 0);

  if (stats) *stats = local;
  return survivors;
}

std::optional<int> is_dictatorial(const CrispCAF& caf) {
  for (int i = 0; i < caf.voter_count; ++i) {
    bool projection = true;
    for (const auto& tab : caf.tables) {
      const std::size_t tuples = tab.tuple_count();
      std::size_t radix = 1;
      for (int k = 0; k < i; ++k) radix *= static_cast<std::size_t>(caf.category_count);
      for (std::size_t idx = 0; idx < tuples && projection; ++idx) {
        const int digit = static_cast<int>((idx / radix) % static_cast<std::size_t>(caf.category_count));
        projection = tab.entries[idx] == digit;
      }
      if (!projection) break;
    }
    if (projection) return i;
  }
  return std::nullopt;
}

std::optional<std::vector<CrispClassification>> find_invalid_profile(const CrispCAF& caf) {
  if (caf.object_count != caf.category_count)
    throw Error(ErrorCode::RequiresSquareSetting,
                "profile scan supports square instances (m == p) only");
  const int p = caf.category_count;
  std::vector<std::vector<int>> bijections;
  {
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bijections.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  const std::size_t profile_count =
      checked_pow(bijections.size(), caf.voter_count, 10'000'000);
  if (profile_count > 10'000'000)
    throw Error(ErrorCode::TooLarge, "profile space exceeds desk scale");

  std::vector<std::size_t> choice(static_cast<std::size_t>(caf.voter_count), 0);
  std::vector<CrispClassification> profile(static_cast<std::size_t>(caf.voter_count));
  for (std::size_t k = 0; k < profile_count; ++k) {
    std::size_t rest = k;
    for (int i = 0; i < caf.voter_count; ++i) {
      choice[static_cast<std::size_t>(i)] = rest % bijections.size();
      rest /= bijections.size();
      profile[static_cast<std::size_t>(i)].assignment = bijections[choice[static_cast<std::size_t>(i)]];
    }
    const CrispClassification out = caf.apply(profile);
    std::vector<char> seen(static_cast<std::size_t>(p), 0);
    for (int j = 0; j < caf.object_count; ++j) seen[static_cast<std::size_t>(out.assignment[static_cast<std::size_t>(j)])] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return profile;
  }
  return std::nullopt;
}

}  // namespace fcaf
