#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cantor/faithfulness.hpp"

using namespace cantor;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Alternating 2 and 2^(2^k): oscillating ratios.
BaseSequence alternating(int K) {
  std::vector<Integer> v;
  for (int k = 1; k <= K; ++k) v.push_back(k % 2 ? Integer(2) : pow_int(2, 1ul << k));
  return BaseSequence::explicit_values(v);
}

}  // namespace

TEST_CASE("ratio closed forms") {
  const auto c2 = ratio_sequence(BaseSequence::constant(2, 100), 11);
  REQUIRE(c2.size() == 10);
  for (int k = 2; k <= 11; ++k) CHECK(rel(c2[k - 2], 1.0 / (k - 1)) < 1e-12);
  CHECK(c2.back() == doctest::Approx(0.1));

  const auto p4 = ratio_sequence(BaseSequence::power(4, 64), 10);
  for (int k = 2; k <= 10; ++k) CHECK(rel(p4[k - 2], 2.0 / (k - 1)) < 1e-12);
  CHECK(p4.back() == doctest::Approx(0.2222).epsilon(1e-3));

  const auto de = ratio_sequence(BaseSequence::double_exponential(2, 100), 60);
  for (int k = 2; k <= 60; ++k) {
    const double closed = std::ldexp(1.0, k) / (std::ldexp(1.0, k) - 2);
    CHECK(rel(de[k - 2], closed) < 1e-12);
  }
  CHECK(de[8] == doctest::Approx(1.00196).epsilon(1e-5));
}

TEST_CASE("limsup_estimate") {
  const auto c2 = ratio_sequence(BaseSequence::constant(2, 200), 100);
  CHECK(limsup_estimate(c2, 20) == doctest::Approx(1.0 / 80));
  const auto de = ratio_sequence(BaseSequence::double_exponential(2, 100), 30);
  CHECK(limsup_estimate(de, 10) == doctest::Approx(std::ldexp(1.0, 21) / (std::ldexp(1.0, 21) - 2)));
  const std::vector<double> zeros(12, 0.0);
  CHECK(limsup_estimate(zeros, 5) == 0.0);
  CHECK_THROWS_AS(limsup_estimate(zeros, 0), Error);
  CHECK_THROWS_AS(limsup_estimate(zeros, 13), Error);
}

TEST_CASE("verdicts") {
  CHECK(faithfulness_verdict(BaseSequence::constant(2, 2000), 1000, 0.01) == Verdict::FaithfulTrend);
  CHECK(faithfulness_verdict(BaseSequence::double_exponential(2, 100), 20, 0.01) ==
        Verdict::NonFaithfulTrend);
  CHECK(faithfulness_verdict(alternating(8), 8, 0.01) == Verdict::Inconclusive);
  CHECK(faithfulness_verdict(BaseSequence::constant(2, 100), 60, 0.01) == Verdict::FaithfulTrend);
  CHECK(faithfulness_verdict(BaseSequence::power(4, 100), 60, 0.01) == Verdict::FaithfulTrend);
  CHECK(faithfulness_verdict(BaseSequence::double_exponential(2, 100), 60, 0.01) ==
        Verdict::NonFaithfulTrend);
  CHECK_THROWS_AS(faithfulness_verdict(BaseSequence::constant(2, 100), 3, 0.01), Error);
  CHECK_THROWS_AS(faithfulness_verdict(BaseSequence::constant(2, 100), 10, 0.0), Error);
}

TEST_CASE("square summability") {
  const auto c2 = square_summability_partials(BaseSequence::constant(2, 2000), 1000);
  CHECK(c2.back() == doctest::Approx(1.6439).epsilon(1e-4));
  CHECK(c2.back() < std::numbers::pi * std::numbers::pi / 6);
  for (std::size_t i = 1; i < c2.size(); ++i) CHECK(c2[i] >= c2[i - 1]);

  // term_k = (2^k/(2^(k+1)-2))^2 tends to 1/4: partials grow linearly
  const auto de = square_summability_partials(BaseSequence::double_exponential(2, 100), 60);
  const double slope = (de[59] - de[39]) / 20;
  CHECK(slope == doctest::Approx(0.25).epsilon(1e-6));

  CHECK(faithfulness_report(BaseSequence::constant(2, 100), 60, 0.01).square_sum_trend ==
        SeriesTrend::Convergent);
  CHECK(faithfulness_report(BaseSequence::double_exponential(2, 100), 60, 0.01).square_sum_trend ==
        SeriesTrend::Divergent);
}

TEST_CASE("report fields are consistent") {
  const auto r = faithfulness_report(BaseSequence::power(4, 64), 60, 0.01);
  CHECK(r.depth == 60);
  CHECK(r.ratios.size() == 59);
  CHECK(r.square_sum_partials.size() == 60);
  CHECK(r.tail_window == default_tail_window(60));
  CHECK(std::abs(r.extrapolated_limit) < 1e-9);
}

namespace {

// Brute force: smallest rank with a cylinder inside [a,b).
int brute_rank(const Rational& a, const Rational& b, const BaseSequence& bases) {
  for (int k = 0; k <= 30; ++k) {
    const Integer P = bases.product(k);
    for (Integer i = 0; i < P; ++i) {
      const Rational left = Rational(i) / P;
      const Rational right = Rational(i + 1) / P;
      if (left >= a && right <= b) return k;
      if (left >= b) break;
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("interval cover examples") {
  const auto c2 = BaseSequence::constant(2, 60);
  const auto whole = interval_to_cylinder_cover(0, 1, c2);
  CHECK(whole.rank == 0);
  CHECK(whole.cylinders.size() == 1);

  // [1/3,2/3): rank-2 cylinders stick out, [3/8,1/2) is the first one inside.
  const auto third = interval_to_cylinder_cover(Rational(1, 3), Rational(2, 3), c2);
  CHECK(third.rank == 3);
  CHECK(third.cylinders.size() == 4);
  CHECK(third.count_bound == 6);

  const auto p4 = interval_to_cylinder_cover(0, Rational(1, 64), BaseSequence::power(4, 64));
  CHECK(p4.rank == 2);
  REQUIRE(p4.cylinders.size() == 1);
  CHECK(p4.cylinders[0].length == Rational(1, 64));

  CHECK_THROWS_AS(interval_to_cylinder_cover(Rational(1, 2), Rational(1, 2), c2), Error);
}

TEST_CASE("interval cover properties against brute force") {
  const auto bases = BaseSequence::explicit_values({2, 3, 2, 5, 3, 2, 2, 3});
  for (int a = 0; a < 30; ++a)
    for (int b = a + 1; b <= 30; ++b) {
      const Rational lo = Rational(a) / 30, hi = Rational(b) / 30;
      const auto cover = interval_to_cylinder_cover(lo, hi, bases);
      CHECK(cover.rank == brute_rank(lo, hi, bases));
      CHECK(Integer(cover.cylinders.size()) <= cover.count_bound);
      // union of the cover contains [lo,hi) and every piece meets it
      CHECK(cover.cylinders.front().left <= lo);
      CHECK(cover.cylinders.back().right() >= hi);
      for (std::size_t i = 0; i < cover.cylinders.size(); ++i) {
        const auto& c = cover.cylinders[i];
        CHECK(c.left < hi);
        CHECK(c.right() > lo);
        if (i > 0) CHECK(cover.cylinders[i - 1].right() == c.left);
      }
    }
}
