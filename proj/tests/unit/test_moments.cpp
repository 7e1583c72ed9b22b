#include <doctest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "rsum/moments.hpp"

using namespace rsum;

TEST_CASE("tail moment examples") {
  auto a = tail_moments(WeightVector::parse("sq:1/2,1/2"), 0);
  CHECK(a.m2.exact_value() == SqrtSum(1L));
  CHECK(a.m4.exact_value() == SqrtSum(2L));

  auto b = tail_moments(WeightVector::parse("sq:1/3,1/3,1/3"), 0);
  CHECK(b.m2.exact_value() == SqrtSum(1L));
  CHECK(b.m4.exact_value() == SqrtSum(Rational(7, 3)));

  auto c = tail_moments(WeightVector::parse("sq:1/3,1/3,1/3"), 3);
  CHECK(c.m2.exact_value().is_zero());
  CHECK(c.m4.exact_value().is_zero());

  auto d = tail_moments(WeightVector::parse("0.8,0.6"), 1);
  CHECK(d.m2.float_value() == doctest::Approx(0.36).epsilon(1e-14));
  CHECK(d.m4.float_value() == doctest::Approx(0.1296).epsilon(1e-14));

  auto e = tail_moments(WeightVector::parse("sq:16/25,9/25"), 1);
  CHECK(e.m2.exact_value() == SqrtSum(Rational(9, 25)));
  CHECK(e.m4.exact_value() == SqrtSum(Rational(81, 625)));
}

TEST_CASE("tail moments reject k > n") {
  try {
    tail_moments(WeightVector::parse("1,1"), 3);
    FAIL("expected out_of_range");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::out_of_range);
  }
}

TEST_CASE("closed form matches enumeration and the double sum") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    WeightVector w = testing::exact_unit_vector(gen, 9);
    for (std::size_t k = 0; k <= w.size(); ++k) {
      auto tm = tail_moments(w, k);
      CAPTURE(w.str());
      CAPTURE(k);
      CHECK(tm.m2.exact_value() == SqrtSum(testing::naive_moment(w, k, 2)));
      CHECK(tm.m4.exact_value() == SqrtSum(testing::naive_moment(w, k, 4)));
      CHECK(tm.m4.exact_value() == SqrtSum(testing::double_sum_m4(w, k)));
      Rational m2 = tm.m2.exact_value().rational();
      Rational m4 = tm.m4.exact_value().rational();
      CHECK(m4 >= m2 * m2);
      CHECK(m4 <= 3 * m2 * m2);
    }
  }
}

TEST_CASE("float moments agree with exact ones within 1e-12") {
  testing::Gen gen(43);
  for (int trial = 0; trial < 40; ++trial) {
    WeightVector e = testing::exact_unit_vector(gen, 10);
    std::vector<double> raw(e.approx().begin(), e.approx().end());
    WeightVector f = WeightVector::canonicalize(raw, NumericMode::floating);
    for (std::size_t k = 0; k <= e.size(); ++k) {
      CHECK(std::fabs(tail_moments(f, k).m2.float_value() - tail_moments(e, k).m2.to_double()) <= 1e-12);
      CHECK(std::fabs(tail_moments(f, k).m4.float_value() - tail_moments(e, k).m4.to_double()) <= 1e-12);
    }
  }
}

TEST_CASE("case-1 tail moments stay below 1/2 and 3/4") {
  testing::Gen gen(47);
  for (int trial = 0; trial < 100; ++trial) {
    WeightVector w = testing::vector_in_case(gen, CaseTag::case1, 2, 16, testing::rational_unit_vector);
    auto tm = tail_moments(w, 2);
    Rational m2 = tm.m2.exact_value().rational();
    Rational m4 = tm.m4.exact_value().rational();
    CHECK(m2 <= Rational(1, 2));
    CHECK(m4 < Rational(3, 4));
    CHECK(m4 <= 3 * m2 * m2);
  }
}
