// Exhaustive search over crisp aggregation rules at desk scale, checked
// against brute-force oracles that share no code with the search.

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "fcaf/crisp.hpp"
#include "fcaf/types.hpp"

#include "test_util.hpp"

using namespace fcaf;
using namespace fcaf_test;

namespace {

std::vector<std::vector<int>> permutations_of(int m) {
  std::vector<int> base(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) base[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

// Flattened table entries, for order-insensitive comparison of rule sets.
std::vector<int> flatten(const CrispCAF& caf) {
  std::vector<int> out;
  for (const auto& table : caf.tables)
    out.insert(out.end(), table.entries.begin(), table.entries.end());
  return out;
}

bool output_is_surjective(const CrispClassification& out, int p) {
  std::vector<bool> hit(static_cast<std::size_t>(p), false);
  for (int v : out.assignment) {
    if (v < 0 || v >= p) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  for (bool h : hit) {
    if (!h) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("elementary tables round-trip their mixed-radix encoding") {
  ElementaryTable table(3, 4);
  REQUIRE(table.tuple_count() == 64);
  for (std::size_t idx = 0; idx < table.tuple_count(); ++idx) {
    const auto tuple = table.decode(idx);
    REQUIRE(tuple.size() == 3);
    for (int v : tuple) {
      CHECK(v >= 0);
      CHECK(v < 4);
    }
    CHECK(table.encode(tuple) == idx);
  }
}

TEST_CASE("rule application is a per-object table lookup") {
  // Object 0 follows voter 0; object 1 follows voter 1.
  CrispCAF caf(2, 2, 2);
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v) {
      caf.tables[0].at({u, v}) = u;
      caf.tables[1].at({u, v}) = v;
    }
  const std::vector<CrispClassification> profile = {
      CrispClassification{{0, 1}}, CrispClassification{{1, 0}}};
  const auto out = caf.apply(profile);
  CHECK(out.assignment == std::vector<int>{0, 0});

  CHECK(error_code_of([&] {
          caf.apply({CrispClassification{{0, 1}}});
        }) == ErrorCode::DimensionMismatch);
  CHECK(error_code_of([&] {
          caf.apply({CrispClassification{{0, 1, 0}},
                     CrispClassification{{1, 0}}});
        }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("two voters, two objects: survivors match an exhaustive oracle") {
  // Independent oracle: enumerate all 16 unanimity-pinned table pairs
  // directly and keep those whose output is a bijection on all four
  // two-voter bijection profiles.
  const auto perms = permutations_of(2);
  std::set<std::vector<int>> expected;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          CrispCAF caf(2, 2, 2);
          for (int table = 0; table < 2; ++table)
            for (int t = 0; t < 2; ++t) caf.tables[static_cast<std::size_t>(table)].at({t, t}) = t;
          caf.tables[0].at({0, 1}) = a;
          caf.tables[0].at({1, 0}) = b;
          caf.tables[1].at({0, 1}) = c;
          caf.tables[1].at({1, 0}) = d;
          bool valid = true;
          for (const auto& p1 : perms)
            for (const auto& p2 : perms) {
              const auto out = caf.apply(
                  {CrispClassification{p1}, CrispClassification{p2}});
              if (!output_is_surjective(out, 2)) valid = false;
            }
          if (valid) expected.insert(flatten(caf));
        }

  CrispSearchStats stats;
  const auto survivors = enumerate_valid_cafs(2, 2, 2, kDefaultCrispBudget, &stats);
  std::set<std::vector<int>> found;
  for (const auto& caf : survivors) found.insert(flatten(caf));

  CHECK(found == expected);
  CHECK(survivors.size() == 4);
  CHECK(stats.survivors == 4);

  // Exactly two of the four are dictatorial: the other two are the
  // AND/OR and OR/AND table pairs, which only exist because m = p = 2.
  int dictators = 0;
  for (const auto& caf : survivors)
    if (is_dictatorial(caf)) ++dictators;
  CHECK(dictators == 2);
}

TEST_CASE("two voters, three objects: only the dictators survive") {
  CrispSearchStats stats;
  const auto survivors = enumerate_valid_cafs(2, 3, 3, kDefaultCrispBudget, &stats);
  REQUIRE(survivors.size() == 2);
  CHECK(stats.survivors == 2);
  CHECK(stats.nodes_expanded == 621);  // deterministic search order, frozen

  std::set<int> dictators;
  for (const auto& caf : survivors) {
    const auto voter = is_dictatorial(caf);
    REQUIRE(voter.has_value());
    dictators.insert(*voter);

    // Independent full-profile scan: every bijective profile maps to a
    // bijective output.
    const auto perms = permutations_of(3);
    for (const auto& p1 : perms)
      for (const auto& p2 : perms) {
        const auto out = caf.apply(
            {CrispClassification{p1}, CrispClassification{p2}});
        CHECK(output_is_surjective(out, 3));
      }
    CHECK_FALSE(find_invalid_profile(caf).has_value());
  }
  CHECK(dictators == std::set<int>{0, 1});
}

TEST_CASE("a single voter leaves exactly the identity rule") {
  for (int m : {2, 3}) {
    const auto survivors = enumerate_valid_cafs(1, m, m);
    REQUIRE(survivors.size() == 1);
    const auto voter = is_dictatorial(survivors[0]);
    REQUIRE(voter.has_value());
    CHECK(*voter == 0);
  }
}

TEST_CASE("mixed dictator tables produce an invalid profile witness") {
  // Objects 0 and 2 follow voter 0, object 1 follows voter 1.
  CrispCAF caf(2, 3, 3);
  for (std::size_t idx = 0; idx < caf.tables[0].tuple_count(); ++idx) {
    const auto tuple = caf.tables[0].decode(idx);
    caf.tables[0].entries[idx] = tuple[0];
    caf.tables[1].entries[idx] = tuple[1];
    caf.tables[2].entries[idx] = tuple[0];
  }
  CHECK_FALSE(is_dictatorial(caf).has_value());

  const auto witness = find_invalid_profile(caf);
  REQUIRE(witness.has_value());
  const auto out = caf.apply(*witness);
  CHECK_FALSE(output_is_surjective(out, 3));
}

TEST_CASE("majority voting is a lawful non-dictatorial rule when m = p = 2") {
  CrispCAF caf(3, 2, 2);
  for (std::size_t idx = 0; idx < caf.tables[0].tuple_count(); ++idx) {
    const auto tuple = caf.tables[0].decode(idx);
    const int ones = tuple[0] + tuple[1] + tuple[2];
    const int majority = ones >= 2 ? 1 : 0;
    caf.tables[0].entries[idx] = majority;
    caf.tables[1].entries[idx] = majority;
  }
  CHECK_FALSE(is_dictatorial(caf).has_value());
  CHECK_FALSE(find_invalid_profile(caf).has_value());
}

TEST_CASE("dictator detection reads the component index") {
  CrispCAF caf(2, 3, 3);
  for (auto& table : caf.tables)
    for (std::size_t idx = 0; idx < table.tuple_count(); ++idx)
      table.entries[idx] = table.decode(idx)[1];
  const auto voter = is_dictatorial(caf);
  REQUIRE(voter.has_value());
  CHECK(*voter == 1);
}

TEST_CASE("the search enforces its shape and budget guards") {
  CHECK(error_code_of([] { enumerate_valid_cafs(2, 3, 2); }) ==
        ErrorCode::RequiresSquareSetting);
  CHECK(error_code_of([] { enumerate_valid_cafs(7, 4, 4); }) ==
        ErrorCode::TooLarge);  // 4^7 tuples per table is beyond desk scale
  try {
    enumerate_valid_cafs(2, 3, 3, 10);
    FAIL("budget of 10 nodes should not complete");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(std::string(e.what()).find("search budget exhausted") !=
          std::string::npos);
  }
  CHECK(error_code_of([] { find_invalid_profile(CrispCAF(2, 3, 2)); }) ==
        ErrorCode::RequiresSquareSetting);
}
