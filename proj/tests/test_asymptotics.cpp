#include <cmath>

#include "akf/asymptotics.hpp"
#include "akf/errors.hpp"
#include "doctest.h"

using namespace akf;

namespace {

ParameterFamily make(SequenceRule a, SequenceRule b, SequenceRule s) {
  return ParameterFamily{std::move(a), std::move(b), std::move(s)};
}

}  // namespace

TEST_CASE("classification of the reference regimes") {
  SUBCASE("slow polynomial decay with vanishing ratio") {
    auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                    SequenceRule::affine(1.0, 1.0));
    auto cls = classify(fam);
    REQUIRE(cls.regime);
    CHECK(cls.regime->case_id == 2);
    CHECK(cls.regime->c == doctest::Approx(1.0));
    CHECK(cls.regime->s == doctest::Approx(0.5));
    CHECK(cls.regime->r == 0.0);
    CHECK(cls.regime->eps0 == doctest::Approx(1.0));
  }
  SUBCASE("fast decay lands in the bounded regime") {
    auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 2.0),
                    SequenceRule::affine(1.0, 1.0));
    auto cls = classify(fam);
    REQUIRE(cls.regime);
    CHECK(cls.regime->case_id == 1);
  }
  SUBCASE("critical decay s = 1") {
    auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(0.8, 1.0),
                    SequenceRule::affine(1.0, 1.0));
    auto cls = classify(fam);
    REQUIRE(cls.regime);
    CHECK(cls.regime->case_id == 3);
  }
  SUBCASE("bounded sigma is not applicable") {
    auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                    SequenceRule::constant(2.0));
    auto cls = classify(fam);
    CHECK(!cls.regime);
    CHECK(!cls.reason.empty());
  }
  SUBCASE("nonzero ratio limit shifts eps0") {
    auto fam = make(SequenceRule::power(2.0, 0.5), SequenceRule::power(1.0, 0.5),
                    SequenceRule::affine(1.0, 1.0));
    auto cls = classify(fam);
    REQUIRE(cls.regime);
    CHECK(cls.regime->r == doctest::Approx(2.0));
    CHECK(cls.regime->eps0 == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("diverging ratio forces the bounded regime") {
    auto fam = make(SequenceRule::constant(1.0), SequenceRule::power(1.0, 0.5),
                    SequenceRule::affine(1.0, 1.0));
    auto cls = classify(fam);
    REQUIRE(cls.regime);
    CHECK(cls.regime->case_id == 1);
  }
  SUBCASE("tabulated sigma cannot certify the limit") {
    auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                    SequenceRule::table({2.0, 3.0, 4.0}));
    auto cls = classify(fam);
    CHECK(!cls.regime);
  }
}

TEST_CASE("predictions per regime") {
  KZRegime case2{1.0, 0.5, 0.0, 1.0, 2};
  Prediction p = predicted_n(case2, 10'000, 0.6);
  CHECK(p.kind == Prediction::Kind::Count);
  CHECK(p.value == doctest::Approx(8192.0));  // 2 * 0.64^2 * 1e4

  // prediction collapses to zero as eps approaches eps0
  Prediction near = predicted_n(case2, 10'000, 0.999999);
  CHECK(near.value < 1.0);

  KZRegime case3{1.0, 1.0, 0.0, 1.0, 3};
  Prediction lg = predicted_n(case3, 22'026, 1.0 / std::sqrt(2.0));
  CHECK(lg.kind == Prediction::Kind::LogCount);
  CHECK(lg.value == doctest::Approx(0.5 * std::log(22'026.0)).epsilon(1e-6));

  KZRegime case1{1.0, 2.0, 0.0, 1.0, 1};
  CHECK(predicted_n(case1, 100, 0.5).kind == Prediction::Kind::BoundedInD);

  CHECK_THROWS_AS(predicted_n(case2, 100, 1.0), validation_error);
  CHECK_THROWS_AS(predicted_n(case2, 100, 1.5), validation_error);
}

TEST_CASE("Q is strictly decreasing and continuous in eps") {
  KZRegime regime{1.0, 0.5, 0.0, 1.0, 2};
  double prev = predicted_n(regime, 1000, 1e-6).value;
  CHECK(prev == doctest::Approx(2000.0).epsilon(1e-4));  // Q(0+) -> 1
  for (double eps : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    double cur = predicted_n(regime, 1000, eps).value;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("compare stabilizes in the bounded regime") {
  auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 2.0),
                  SequenceRule::affine(1.0, 1.0));
  auto rows = compare(fam, {100, 1000, 10'000}, 0.5);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].n_computed == rows[2].n_computed);
  CHECK(rows[2].ratio == doctest::Approx(1.0));
}

TEST_CASE("compare tracks the linear-growth prediction") {
  auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                  SequenceRule::affine(1.0, 1.0));
  auto rows = compare(fam, {100, 10'000}, 0.6);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].n_predicted == doctest::Approx(8192.0));
  CHECK(rows[1].ratio == doctest::Approx(1.0).epsilon(0.25));
  // drift shrinks with d
  CHECK(std::abs(rows[1].ratio - 1.0) <= std::abs(rows[0].ratio - 1.0));
}

TEST_CASE("compare rejects families outside the regimes") {
  auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                  SequenceRule::constant(2.0));
  CHECK_THROWS_AS(compare(fam, {10, 100}, 0.5), validation_error);
}

TEST_CASE("compare table stays well-formed near eps0") {
  auto fam = make(SequenceRule::constant(0.0), SequenceRule::power(1.0, 0.5),
                  SequenceRule::affine(1.0, 1.0));
  auto rows = compare(fam, {100, 1000}, 0.995);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.n_computed >= 1);
    CHECK(std::isfinite(row.n_predicted));
    CHECK(std::isfinite(row.ratio));
  }
}
