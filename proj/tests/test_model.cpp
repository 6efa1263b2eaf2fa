// Validation semantics, profile utilities, and crisp embedding.

#include "doctest.h"

#include "fcaf/model.hpp"
#include "fcaf/rng.hpp"
#include "fcaf/sample.hpp"
#include "fcaf/types.hpp"

#include "test_util.hpp"

using namespace fcaf;
using namespace fcaf_test;

using VR = ValidationResult<Rational>;

TEST_CASE("validate_classification accepts the worked example voters") {
  const auto profile = worked_example();
  for (const auto& voter : profile.voters)
    CHECK(validate_classification<Rational>(voter, profile.setting).ok());
}

TEST_CASE("validation reports dimension mismatch before anything else") {
  Classification<Rational> c = mat({{"1", "0"}, {"0", "1"}});
  const auto r = validate_classification<Rational>(c, standard(1, 3, 2));
  CHECK(r.kind == VR::Kind::DimensionMismatch);
}

TEST_CASE("validation scans entries row-major before row sums") {
  // Entry (0,1) is negative and row 1 does not sum to 1; the entry wins.
  Classification<Rational> c = mat({{"3/2", "-1/2"}, {"1/2", "0"}});
  const auto r = validate_classification<Rational>(c, standard(1, 2, 2));
  CHECK(r.kind == VR::Kind::EntryRange);
  CHECK(r.row == 0);
  CHECK(r.column == 0);  // 3/2 > 1 is hit before -1/2 < 0
  CHECK(r.actual == rat("3/2"));
}

TEST_CASE("validation reports the first bad row sum in ascending order") {
  Classification<Rational> c =
      mat({{"1/2", "1/2"}, {"1/2", "1/4"}, {"1/4", "1/4"}});
  const auto r = validate_classification<Rational>(c, standard(1, 3, 2));
  CHECK(r.kind == VR::Kind::RowSum);
  CHECK(r.row == 1);
  CHECK(r.actual == rat("3/4"));
}

TEST_CASE("validation reports the first deficient column") {
  // Rows all valid; column 2 receives total 3/4 < 1.
  Classification<Rational> c = mat({{"1/2", "1/4", "1/4"},
                                    {"1/4", "1/2", "1/4"},
                                    {"1/2", "1/4", "1/4"}});
  const auto r = validate_classification<Rational>(c, standard(1, 3, 3));
  CHECK(r.kind == VR::Kind::ColumnSum);
  CHECK(r.column == 2);
  CHECK(r.actual == rat("3/4"));
}

TEST_CASE("square classifications are forced doubly stochastic") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto c = sample_square_classification(3, rng);
    REQUIRE(validate_classification<Rational>(c, standard(1, 3, 3)).ok());
    for (int t = 0; t < 3; ++t) {
      Rational col(0);
      for (int j = 0; j < 3; ++j) col += c(j, t);
      CHECK(col == Rational(1));
    }
  }
}

TEST_CASE("star entries may leave [0,1] as long as the sums work out") {
  const Setting s = star(1, 2, 2, Rational(2));
  Classification<Rational> c = mat({{"3/2", "1/2"}, {"1/2", "3/2"}});
  CHECK(validate_classification<Rational>(c, s).ok());
}

TEST_CASE("negative scale flips the column inequality") {
  const Setting s = star(1, 2, 2, Rational(-1));
  CHECK(validate_classification<Rational>(
            mat({{"-1/2", "-1/2"}, {"-1/2", "-1/2"}}), s)
            .ok());

  // Rows sum to -1 but column 0 collects 0 > -1.
  const auto r = validate_classification<Rational>(
      mat({{"0", "-1"}, {"0", "-1"}}), s);
  CHECK(r.kind == VR::Kind::ColumnSum);
  CHECK(r.column == 0);
  CHECK(r.actual == Rational(0));
}

TEST_CASE("star rows must sum to the scale exactly") {
  const Setting s = star(1, 2, 2, Rational(8));
  const auto r = validate_classification<Rational>(
      mat({{"4", "3"}, {"4", "4"}}), s);
  CHECK(r.kind == VR::Kind::RowSum);
  CHECK(r.row == 0);
}

TEST_CASE("validate_profile pins the offending voter") {
  auto profile = worked_example();
  profile.voters[1](0, 0) = rat("1/2");  // break voter 1's first row sum
  const auto r = validate_profile<Rational>(profile);
  CHECK(r.kind == VR::Kind::RowSum);
  CHECK(r.voter == 1);
  CHECK(r.row == 0);
}

TEST_CASE("validate_profile rejects a voter-count mismatch") {
  auto profile = worked_example();
  profile.voters.pop_back();
  const auto r = validate_profile<Rational>(profile);
  CHECK(r.kind == VR::Kind::DimensionMismatch);
}

TEST_CASE("setting validation rejects malformed dimension combinations") {
  CHECK(error_code_of([] { standard(0, 3, 3).validate(); }) ==
        ErrorCode::InvalidConfig);
  CHECK(error_code_of([] { standard(1, 2, 3).validate(); }) ==
        ErrorCode::InvalidConfig);  // m < p
  CHECK(error_code_of([] { standard(1, 3, 1).validate(); }) ==
        ErrorCode::InvalidConfig);  // p < 2
  CHECK(error_code_of([] { star(1, 2, 2, Rational(0)).validate(); }) ==
        ErrorCode::InvalidConfig);  // star needs s != 0
  CHECK(error_code_of([] {
          Setting s = standard(1, 2, 2);
          s.scale = Rational(2);
          s.validate();
        }) == ErrorCode::InvalidConfig);  // standard pins s = 1
  CHECK_FALSE(error_code_of([] { star(2, 3, 2, Rational(-5)).validate(); }));
}

TEST_CASE("restrict collects one row per voter") {
  const auto profile = worked_example();
  const auto col = restrict<Rational>(profile, 0);
  REQUIRE(col.rows() == 3);
  REQUIRE(col.cols() == 3);
  CHECK(col(0, 0) == rat("1/3"));
  CHECK(col(0, 1) == rat("2/3"));
  CHECK(col(1, 0) == Rational(1));
  CHECK(col(2, 2) == rat("1/4"));
  CHECK(error_code_of([&] { restrict<Rational>(profile, 3); }) ==
        ErrorCode::IndexOutOfRange);
  CHECK(error_code_of([&] { restrict<Rational>(profile, -1); }) ==
        ErrorCode::IndexOutOfRange);
}

TEST_CASE("is_permutation accepts exactly the bijections") {
  CHECK(is_permutation({0, 1, 2}, 3));
  CHECK(is_permutation({2, 0, 1}, 3));
  CHECK_FALSE(is_permutation({0, 0, 1}, 3));
  CHECK_FALSE(is_permutation({0, 1, 3}, 3));
  CHECK_FALSE(is_permutation({0, 1}, 3));
  CHECK_FALSE(is_permutation({-1, 1, 0}, 3));
}

TEST_CASE("permutation_matrix places a single one per row") {
  const auto c = permutation_matrix<Rational>({1, 2, 0});
  CHECK(c(0, 1) == Rational(1));
  CHECK(c(1, 2) == Rational(1));
  CHECK(c(2, 0) == Rational(1));
  CHECK(c(0, 0) == Rational(0));
  CHECK(validate_classification<Rational>(c, standard(1, 3, 3)).ok());
  CHECK(error_code_of([] { permutation_matrix<Rational>({0, 0, 1}); }) ==
        ErrorCode::InvalidPermutation);
}

TEST_CASE("permute_voters relabels so output voter i is input voter sigma[i]") {
  const auto profile = worked_example();
  const auto out = permute_voters<Rational>(profile, {2, 0, 1});
  CHECK(out.voters[0] == profile.voters[2]);
  CHECK(out.voters[1] == profile.voters[0]);
  CHECK(out.voters[2] == profile.voters[1]);
  CHECK(error_code_of([&] { permute_voters<Rational>(profile, {0, 0, 1}); }) ==
        ErrorCode::InvalidPermutation);
}

TEST_CASE("embed_crisp is valid for every surjective assignment up to m = p = 4") {
  for (int m = 2; m <= 4; ++m)
    for (int p = 2; p <= m; ++p) {
      const Setting setting = standard(1, m, p);
      for (const auto& crisp : enumerate_crisp_classifications(m, p)) {
        const auto c = embed_crisp<Rational>(crisp, p);
        CHECK(validate_classification<Rational>(c, setting).ok());
        // One-hot rows: the embedded matrix mirrors the assignment.
        for (int j = 0; j < m; ++j)
          CHECK(c(j, crisp.assignment[static_cast<std::size_t>(j)]) ==
                Rational(1));
      }
    }
}

TEST_CASE("embed_crisp rejects non-surjective and out-of-range assignments") {
  CHECK(error_code_of([] {
          embed_crisp<Rational>(CrispClassification{{0, 0, 1}}, 3);
        }) == ErrorCode::NotSurjective);
  CHECK(error_code_of([] {
          embed_crisp<Rational>(CrispClassification{{0, 1, 5}}, 3);
        }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("cast_profile moves between scalar lanes entry by entry") {
  const auto profile = worked_example();
  const auto dbl = cast_profile<double, Rational>(profile);
  CHECK(dbl.voters[0](0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto back = cast_profile<Rational, double>(dbl);
  // 1/3 -> double -> exact rational of that double is no longer 1/3 ...
  CHECK(back.voters[0](0, 0) != rat("1/3"));
  // ... but voter 1's crisp entries survive the round trip exactly.
  CHECK(back.voters[1] == profile.voters[1]);
}

TEST_CASE("double-lane validation tolerates rounding noise") {
  Classification<double> c(2, 2);
  // Sums land on 1 only up to binary rounding noise (0.1 + 0.2 != 0.3).
  c << 0.1 + 0.2, 0.7, 0.7, 0.1 + 0.2;
  CHECK(validate_classification<double>(c, standard(1, 2, 2)).ok());
}
