#pragma once

// Exhaustive search over crisp (non-fuzzy) classification aggregation rules
// for small square instances.  A rule is given per object by an elementary
// table mapping the voters' category tuple at that object to an output
// category.  The search enumerates every independent, unanimous rule whose
// output is surjective on all surjective input profiles, so the survivor set
// can be inspected (e.g. for dictatorships) at desk scale.

#include <cstdint>
#include <optional>
#include <vector>

#include "fcaf/types.hpp"

namespace fcaf {

// Per-object lookup table: the output category as a function of the n input
// categories (one per voter) at that object.  Entries are stored flat in
// mixed-radix order with voter 0 as the least significant digit.
struct ElementaryTable {
  int voter_count = 0;
  int category_count = 0;
  std::vector<int> entries;  // size category_count^voter_count, values in [0, p)

  ElementaryTable() = default;
  ElementaryTable(int n, int p, int fill = -1);

  // Number of input tuples (p^n).
  std::size_t tuple_count() const;

  // Flat index of a tuple (tuple[i] = voter i's category).
  std::size_t encode(const std::vector<int>& tuple) const;
  // Inverse of encode.
  std::vector<int> decode(std::size_t index) const;

  int at(const std::vector<int>& tuple) const { return entries[encode(tuple)]; }
  int& at(const std::vector<int>& tuple) { return entries[encode(tuple)]; }
};

// An independent crisp aggregation rule: one elementary table per object.
struct CrispCAF {
  int voter_count = 0;
  int object_count = 0;
  int category_count = 0;
  std::vector<ElementaryTable> tables;  // size object_count

  CrispCAF() = default;
  CrispCAF(int n, int m, int p);

  // Apply the rule to a crisp profile (one assignment vector per voter).
  // Throws DimensionMismatch on shape errors.
  CrispClassification apply(const std::vector<CrispClassification>& profile) const;
};

// Search statistics reported alongside the survivor set.
struct CrispSearchStats {
  std::uint64_t nodes_expanded = 0;   // candidate (entry, category) trials
  std::uint64_t survivors = 0;        // complete rules accepted
};

inline constexpr std::uint64_t kDefaultCrispBudget = 1'000'000'000ULL;

// Enumerate every independent, unanimous crisp rule for n voters, m objects,
// p categories (square instances only: m == p) whose output classification is
// surjective on every profile of surjective (hence bijective) voter
// classifications.  Depth-first over free table entries — objects outer,
// input tuples inner, candidate categories ascending — pruning a partial
// assignment as soon as two table entries force equal outputs at distinct
// objects on some realizable profile.  Survivors are returned in the
// deterministic search order.
//
// Throws RequiresSquareSetting when m != p, TooLarge when the table space is
// beyond desk scale, and BudgetExceeded (message carries partial statistics)
// when the node budget runs out.
std::vector<CrispCAF> enumerate_valid_cafs(int n, int m, int p,
                                           std::uint64_t budget = kDefaultCrispBudget,
                                           CrispSearchStats* stats = nullptr);

// Voter index i such that every table maps every tuple to its i-th component,
// or nullopt when no such voter exists.  Smallest index wins if several
// qualify (possible only in degenerate instances).
std::optional<int> is_dictatorial(const CrispCAF& caf);

// Scan all bijective-voter profiles for one where the rule's output misses a
// category; nullopt means the rule is valid.  Square instances only; throws
// TooLarge when the profile space exceeds desk scale.
std::optional<std::vector<CrispClassification>> find_invalid_profile(const CrispCAF& caf);

}  // namespace fcaf
