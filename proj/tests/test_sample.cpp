// Seeded profile generators, constrained completion, and crisp enumeration
// against an independent Stirling-number oracle.

#include "doctest.h"

#include <map>
#include <set>
#include <vector>

#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/sample.hpp"

#include "test_util.hpp"

using namespace fcaf;
using namespace fcaf_test;

namespace {

// Independent oracle: surjections from m onto p equal p! * S(m, p), with the
// partition numbers built from the recurrence S(m,p) = p*S(m-1,p) + S(m-1,p-1).
long long surjections_by_recurrence(int m, int p) {
  std::map<std::pair<int, int>, long long> s;
  s[{0, 0}] = 1;
  for (int mm = 1; mm <= m; ++mm) {
    for (int pp = 1; pp <= mm; ++pp) {
      const long long keep = s.count({mm - 1, pp}) ? s[{mm - 1, pp}] : 0;
      const long long open = s.count({mm - 1, pp - 1}) ? s[{mm - 1, pp - 1}] : 0;
      s[{mm, pp}] = pp * keep + open;
    }
  }
  long long factorial = 1;
  for (int i = 2; i <= p; ++i) factorial *= i;
  return factorial * (s.count({m, p}) ? s[{m, p}] : 0);
}

}  // namespace

TEST_CASE("every strategy produces valid classifications across shapes") {
  struct Case {
    int m, p;
    Strategy strategy;
  };
  const std::vector<Case> cases = {
      {2, 2, BirkhoffMix{1}}, {3, 3, BirkhoffMix{4}}, {4, 4, BirkhoffMix{2}},
      {3, 2, DirichletRepair{}}, {4, 3, DirichletRepair{4}},
      {5, 3, DirichletRepair{}}, {3, 3, VertexOnly{}}, {5, 2, VertexOnly{}}};
  for (const auto& c : cases) {
    const Setting setting = standard(1, c.m, c.p);
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
      const auto sample = sample_classification(setting, c.strategy, rng);
      REQUIRE(validate_classification<Rational>(sample, setting).ok());
    }
  }
}

TEST_CASE("a one-term Birkhoff mix is a permutation matrix") {
  Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = sample_square_classification(4, rng, 1);
    for (int j = 0; j < 4; ++j)
      for (int t = 0; t < 4; ++t)
        CHECK((c(j, t) == Rational(0) || c(j, t) == Rational(1)));
    CHECK(validate_classification<Rational>(c, standard(1, 4, 4)).ok());
  }
}

TEST_CASE("vertex samples are one-hot in every row") {
  Rng rng(35);
  for (int trial = 0; trial < 100; ++trial) {
    const auto c = sample_vertex_classification(4, 3, rng);
    for (int j = 0; j < 4; ++j) {
      int ones = 0;
      for (int t = 0; t < 3; ++t) {
        CHECK((c(j, t) == Rational(0) || c(j, t) == Rational(1)));
        if (c(j, t) == Rational(1)) ++ones;
      }
      CHECK(ones == 1);
    }
    CHECK(validate_classification<Rational>(c, standard(1, 4, 3)).ok());
  }
}

TEST_CASE("profiles are deterministic in the seed and vary across seeds") {
  const SamplerConfig config{standard(3, 3, 3), 12345, BirkhoffMix{}};
  const auto a = sample_profile(config);
  const auto b = sample_profile(config);
  REQUIRE(a.voters.size() == b.voters.size());
  for (std::size_t i = 0; i < a.voters.size(); ++i)
    CHECK(a.voters[i] == b.voters[i]);

  SamplerConfig other = config;
  other.seed = 12346;
  const auto c = sample_profile(other);
  bool any_difference = false;
  for (std::size_t i = 0; i < a.voters.size() && !any_difference; ++i)
    any_difference = !(a.voters[i] == c.voters[i]);
  CHECK(any_difference);
}

TEST_CASE("distinct seeds essentially never collide") {
  std::set<std::string> seen;
  for (int seed = 0; seed < 200; ++seed) {
    const auto p =
        sample_profile(SamplerConfig{standard(1, 3, 3), static_cast<std::uint64_t>(seed),
                                     BirkhoffMix{}});
    std::string key;
    for (int j = 0; j < 3; ++j)
      for (int t = 0; t < 3; ++t) key += p.voters[0](j, t).str() + ";";
    seen.insert(key);
  }
  CHECK(seen.size() == 200);
}

TEST_CASE("star profiles scale every row to s") {
  for (const char* s : {"8", "-1"}) {
    const Setting setting = star(2, 3, 3, rat(s));
    const SamplerConfig config{setting, 77, BirkhoffMix{}};
    const auto profile = sample_profile(config);
    CHECK(validate_profile<Rational>(profile).ok());
    for (const auto& voter : profile.voters)
      for (int j = 0; j < 3; ++j) {
        Rational row(0);
        for (int t = 0; t < 3; ++t) row += voter(j, t);
        CHECK(row == rat(s));
      }
  }
}

TEST_CASE("setting-level sampling works in the double lane too") {
  const Setting setting = star(2, 2, 2, Rational(8));
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto profile = sample_setting_profile<double>(setting, rng);
    CHECK(validate_profile<double>(profile).ok());
  }
}

TEST_CASE("sampler configuration is validated") {
  Rng rng(1);
  CHECK(error_code_of([&] { sample_square_classification(3, rng, 0); }) ==
        ErrorCode::InvalidConfig);
  CHECK(error_code_of([&] { sample_rect_classification(3, 3, rng); }) ==
        ErrorCode::InvalidConfig);  // needs m > p
  CHECK(error_code_of([&] {
          sample_classification(standard(1, 3, 2), BirkhoffMix{}, rng);
        }) == ErrorCode::InvalidConfig);  // Birkhoff needs m = p
  CHECK(error_code_of([&] {
          sample_classification(standard(1, 3, 3), DirichletRepair{}, rng);
        }) == ErrorCode::InvalidConfig);  // Dirichlet needs m > p
}

TEST_CASE("enumeration counts match the Stirling oracle up to m = p = 5") {
  for (int m = 2; m <= 5; ++m)
    for (int p = 2; p <= m; ++p) {
      const long long expected = surjections_by_recurrence(m, p);
      CHECK(surjection_count(m, p) == BigInt(expected));
      const auto all = enumerate_crisp_classifications(m, p);
      CHECK(static_cast<long long>(all.size()) == expected);

      // Every enumerated assignment is surjective; no duplicates.
      std::set<std::vector<int>> distinct;
      for (const auto& c : all) {
        std::vector<bool> hit(static_cast<std::size_t>(p), false);
        for (int v : c.assignment) hit[static_cast<std::size_t>(v)] = true;
        for (bool h : hit) CHECK(h);
        distinct.insert(c.assignment);
      }
      CHECK(distinct.size() == all.size());
    }
}

TEST_CASE("enumeration is lexicographic") {
  const auto rect = enumerate_crisp_classifications(3, 2);
  const std::vector<std::vector<int>> expected_rect = {
      {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 0, 0}, {1, 0, 1}, {1, 1, 0}};
  REQUIRE(rect.size() == expected_rect.size());
  for (std::size_t i = 0; i < rect.size(); ++i)
    CHECK(rect[i].assignment == expected_rect[i]);

  const auto square = enumerate_crisp_classifications(3, 3);
  const std::vector<std::vector<int>> expected_square = {
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  REQUIRE(square.size() == expected_square.size());
  for (std::size_t i = 0; i < square.size(); ++i)
    CHECK(square[i].assignment == expected_square[i]);

  CHECK(enumerate_crisp_classifications(2, 2).size() == 2);
}

TEST_CASE("enumeration refuses desk-scale blowups") {
  // 4! * S(12, 4) = 14,676,024 > 10^7.
  CHECK(error_code_of([] { enumerate_crisp_classifications(12, 4); }) ==
        ErrorCode::TooLarge);
}

TEST_CASE("completion honors fixed rows in the square case") {
  const Setting setting = standard(1, 3, 3);
  Rng rng(51);
  std::map<int, std::vector<Rational>> fixed;
  fixed[1] = {rat("1/2"), rat("1/4"), rat("1/4")};
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = complete_classification(setting, fixed, rng);
    REQUIRE(c.has_value());
    CHECK((*c)(1, 0) == rat("1/2"));
    CHECK((*c)(1, 1) == rat("1/4"));
    CHECK((*c)(1, 2) == rat("1/4"));
    CHECK(validate_classification<Rational>(*c, setting).ok());
  }
}

TEST_CASE("completion honors fixed rows in the rectangular case") {
  const Setting setting = standard(1, 4, 2);
  Rng rng(53);
  std::map<int, std::vector<Rational>> fixed;
  fixed[0] = {Rational(1), Rational(0)};
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = complete_classification(setting, fixed, rng);
    REQUIRE(c.has_value());
    CHECK((*c)(0, 0) == Rational(1));
    CHECK(validate_classification<Rational>(*c, setting).ok());
  }
}

TEST_CASE("infeasible frozen rows yield no completion") {
  const Setting setting = standard(1, 3, 3);
  Rng rng(55);
  std::map<int, std::vector<Rational>> fixed;
  fixed[0] = {Rational(1), Rational(0), Rational(0)};
  fixed[1] = {Rational(1), Rational(0), Rational(0)};  // column 0 now over 1
  CHECK_FALSE(complete_classification(setting, fixed, rng).has_value());

  std::map<int, std::vector<Rational>> bad_sum;
  bad_sum[0] = {rat("1/2"), rat("1/4"), rat("1/8")};  // row sums to 7/8
  CHECK_FALSE(complete_classification(setting, bad_sum, rng).has_value());
}

TEST_CASE("generator self-test: sampled profiles validate in bulk") {
  const Setting setting = standard(2, 3, 3);
  Rng rng(57);
  for (int trial = 0; trial < 500; ++trial) {
    const auto profile = sample_setting_profile<Rational>(setting, rng);
    REQUIRE(validate_profile<Rational>(profile).ok());
  }
}
