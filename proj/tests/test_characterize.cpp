// Weight recovery by permutation probes, cross-category equality, and the
// weighted-mean membership fit.

#include "doctest.h"

#include <vector>

#include "fcaf/characterize.hpp"
#include "fcaf/fixtures.hpp"

#include "test_util.hpp"

using namespace fcaf;
using namespace fcaf_test;

TEST_CASE("probe profiles are permutation-matrix stacks") {
  const auto probe = probe_profile(2, 3, {{0, 1, 2}, {1, 2, 0}});
  // Voter 0 files the identity, voter 1 the cyclic shift, so object 0's
  // restricted columns read (1,0,0) and (0,1,0).
  CHECK(probe.voters[0].row(0) == mat({{"1", "0", "0"}}).row(0));
  CHECK(probe.voters[1].row(0) == mat({{"0", "1", "0"}}).row(0));
  CHECK(validate_profile<Rational>(probe).ok());

  const auto unanimous = probe_profile(3, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  for (const auto& voter : unanimous.voters)
    CHECK(voter == permutation_matrix<Rational>({0, 1, 2}));

  const auto single = probe_profile(1, 3, {{2, 0, 1}});
  CHECK(single.voters[0] == permutation_matrix<Rational>({2, 0, 1}));

  CHECK(error_code_of([] { probe_profile(2, 3, {{0, 1, 2}, {1, 0}}); }) ==
        ErrorCode::RequiresSquareSetting);
  CHECK(error_code_of([] { probe_profile(2, 3, {{0, 1, 2}}); }) ==
        ErrorCode::LengthMismatch);
}

TEST_CASE("recovery reads the true weights off a weighted mean") {
  const Setting setting = standard(3, 3, 3);
  const auto w = make_weights<Rational>({rat("1/2"), rat("0"), rat("1/2")});
  const auto wm = recover_weight_matrix<Rational>(make_wam<Rational>(setting, w));
  REQUIRE(wm.w.rows() == 3);
  REQUIRE(wm.w.cols() == 3);
  for (int t = 0; t < 3; ++t) {
    CHECK(wm.w(0, t) == rat("1/2"));
    CHECK(wm.w(1, t) == rat("0"));
    CHECK(wm.w(2, t) == rat("1/2"));
  }
  CHECK(wm.notes.empty());
  const auto eq = check_weight_equality<Rational>(wm);
  REQUIRE(eq.equal);
  CHECK(eq.weights == w);
}

TEST_CASE("recovery on a dictator reads the unit vector in every category") {
  const Setting setting = standard(3, 3, 3);
  const auto agg = make_wam<Rational>(
      setting, make_weights<Rational>({Rational(1), Rational(0), Rational(0)}));
  const auto wm = recover_weight_matrix<Rational>(agg);
  for (int t = 0; t < 3; ++t) {
    CHECK(wm.w(0, t) == Rational(1));
    CHECK(wm.w(1, t) == Rational(0));
    CHECK(wm.w(2, t) == Rational(0));
  }
}

TEST_CASE("recovery on the mean is uniform across small square shapes") {
  for (int n = 2; n <= 4; ++n)
    for (int m = 2; m <= 4; ++m) {
      const Setting setting = standard(n, m, m);
      const auto wm = recover_weight_matrix<Rational>(
          make_arithmetic_mean<Rational>(setting));
      for (int i = 0; i < n; ++i)
        for (int t = 0; t < m; ++t) CHECK(wm.w(i, t) == Rational(1, n));
    }
}

TEST_CASE("per-category weights survive recovery but fail the equality check") {
  const Setting setting = standard(2, 3, 3);
  const auto agg = fixtures::per_category_wam<Rational>(setting);
  const auto wm = recover_weight_matrix<Rational>(agg);
  // The probe outputs are not valid classifications, which recovery records
  // as a warning rather than an abort.
  REQUIRE_FALSE(wm.notes.empty());

  const auto eq = check_weight_equality<Rational>(wm);
  REQUIRE_FALSE(eq.equal);
  CHECK(eq.voter == 0);
  CHECK(eq.category_a == 0);
  CHECK(eq.category_b == 1);
  CHECK(eq.value_a == rat("1/3"));
  CHECK(eq.value_b == rat("2/3"));
}

TEST_CASE("weight equality basics") {
  WeightMatrix<Rational> uniform;
  uniform.w = Classification<Rational>::Constant(3, 3, rat("1/3"));
  CHECK(check_weight_equality<Rational>(uniform).equal);

  WeightMatrix<Rational> split;
  split.w = mat({{"1/2", "1/4"}, {"1/2", "3/4"}});
  const auto eq = check_weight_equality<Rational>(split);
  REQUIRE_FALSE(eq.equal);
  CHECK(eq.category_a == 0);
  CHECK(eq.category_b == 1);
  CHECK(eq.voter == 0);
  CHECK(eq.value_a == rat("1/2"));
  CHECK(eq.value_b == rat("1/4"));
}

TEST_CASE("bloc-dependent weights are flagged as non-additive") {
  const Setting setting = standard(3, 3, 3);
  const auto agg = fixtures::bloc_sensitive<Rational>(setting);
  CHECK(error_code_of([&] { recover_weight_matrix<Rational>(agg); }) ==
        ErrorCode::NonAdditive);
}

TEST_CASE("a constant rule fails the zero-unanimity precondition") {
  const Setting setting = standard(2, 3, 3);
  const auto agg = fixtures::constant_uniform<Rational>(setting);
  CHECK(error_code_of([&] { recover_weight_matrix<Rational>(agg); }) ==
        ErrorCode::PreconditionFailed);
}

TEST_CASE("an additive transfer makes the probe families disagree") {
  const Setting setting = standard(3, 3, 3);
  const auto agg = fixtures::additive_noise<Rational>(setting);
  CHECK(error_code_of([&] { recover_weight_matrix<Rational>(agg); }) ==
        ErrorCode::NonAdditive);
}

TEST_CASE("recovery requires the standard variant") {
  const auto agg = make_arithmetic_mean<Rational>(star(2, 3, 3, Rational(8)));
  CHECK(error_code_of([&] { recover_weight_matrix<Rational>(agg); }) ==
        ErrorCode::WrongSetting);
}

TEST_CASE("fitting a rational weighted mean recovers it exactly") {
  const Setting setting = standard(3, 3, 3);
  const auto w = make_weights<Rational>({rat("1/5"), rat("2/5"), rat("2/5")});
  const auto report = fit_wam<Rational>(make_wam<Rational>(setting, w),
                                        Sampled{40, 8});
  CHECK(report.is_wam);
  CHECK(report.weights == w);
  CHECK(report.max_residual == Rational(0));
  CHECK_FALSE(report.used_least_squares);
  CHECK_FALSE(report.degenerate_weights);
}

TEST_CASE("fitting a double-lane weighted mean recovers it to 1e-9") {
  const Setting setting = standard(3, 3, 3);
  Weights<double> w(3);
  w << 0.2, 0.3, 0.5;
  const auto report =
      fit_wam<double>(make_wam<double>(setting, w), Sampled{40, 8});
  CHECK(report.is_wam);
  for (int i = 0; i < 3; ++i)
    CHECK(report.weights(i) == doctest::Approx(w(i)).epsilon(1e-9));
  CHECK(report.max_residual <= 1e-12);
}

TEST_CASE("fitting a dictator flags the degeneracy") {
  const Setting setting = standard(2, 3, 3);
  const auto agg = make_wam<Rational>(
      setting, make_weights<Rational>({Rational(0), Rational(1)}));
  const auto report = fit_wam<Rational>(agg, Sampled{40, 12});
  CHECK(report.is_wam);
  CHECK(report.degenerate_weights);
  REQUIRE_FALSE(report.notes.empty());
}

TEST_CASE("rectangular recovery ignores the uniform filler objects") {
  const Setting setting = standard(3, 4, 3);  // m > p
  const auto w = make_weights<Rational>({rat("1/6"), rat("1/3"), rat("1/2")});
  const auto wm = recover_weight_matrix<Rational>(make_wam<Rational>(setting, w));
  const auto eq = check_weight_equality<Rational>(wm);
  REQUIRE(eq.equal);
  CHECK(eq.weights == w);

  const auto report = fit_wam<Rational>(make_wam<Rational>(setting, w),
                                        Sampled{30, 15});
  CHECK(report.is_wam);
  CHECK(report.weights == w);
  CHECK(report.max_residual == Rational(0));
}

TEST_CASE("the 2x2 cube-mean rule is recovery-consistent yet not a mean") {
  const Setting setting = standard(2, 2, 2);
  const auto agg = make_odd_h<double>(setting, HSpec<double>::power_mean(3));
  // On crisp permutation probes the cube mean looks perfectly symmetric,
  // so recovery succeeds with weights (1/2, 1/2)...
  const auto wm = recover_weight_matrix<double>(agg);
  const auto eq = check_weight_equality<double>(wm);
  REQUIRE(eq.equal);
  CHECK(eq.weights(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eq.weights(1) == doctest::Approx(0.5).epsilon(1e-12));

  // ...but the fresh-sample residual exposes the nonlinearity.
  const auto report = fit_wam<double>(agg, Sampled{200, 4});
  CHECK_FALSE(report.is_wam);
  CHECK(report.max_residual > 1e-3);
  CHECK(report.witness.has_value());
  CHECK_FALSE(report.used_least_squares);
  REQUIRE_FALSE(report.notes.empty());  // carries the m < 3 caveat
}

TEST_CASE("rules without probe readings fall back to least squares") {
  const Setting setting = standard(2, 3, 3);
  const auto agg = fixtures::constant_uniform<Rational>(setting);
  const auto report = fit_wam<Rational>(agg, Sampled{60, 21});
  CHECK(report.used_least_squares);
  CHECK_FALSE(report.is_wam);
  CHECK(report.max_residual > Rational(0));
  REQUIRE_FALSE(report.notes.empty());
}

TEST_CASE("per-category rules fall back to least squares and stay non-mean") {
  const Setting setting = standard(2, 3, 3);
  const auto agg = fixtures::per_category_wam<Rational>(setting);
  const auto report = fit_wam<Rational>(agg, Sampled{60, 23});
  CHECK(report.used_least_squares);
  CHECK_FALSE(report.is_wam);
  CHECK(report.max_residual > Rational(0));
}

TEST_CASE("star-setting means are confirmed through the least-squares path") {
  const Setting setting = star(2, 2, 2, Rational(8));
  const auto w = make_weights<Rational>({rat("3/4"), rat("1/4")});
  const auto report = fit_wam<Rational>(make_wam<Rational>(setting, w),
                                        Sampled{40, 27});
  CHECK(report.used_least_squares);  // probes are standard-setting only
  CHECK(report.is_wam);
  CHECK(report.weights == w);
  CHECK(report.max_residual == Rational(0));
}
