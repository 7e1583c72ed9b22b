#include <doctest.h>

#include <cmath>

#include "rsum/numeric.hpp"

using namespace rsum;

TEST_CASE("split_square separates the square part") {
  auto s = split_square(Integer(72));
  CHECK(s.root == 6);
  CHECK(s.radicand == 2);
  s = split_square(Integer(1));
  CHECK(s.root == 1);
  CHECK(s.radicand == 1);
  s = split_square(Integer(0));
  CHECK(s.root == 0);
  s = split_square(Integer("1000000000000000000000000"));  // 10^24
  CHECK(s.root == Integer("1000000000000"));
  CHECK(s.radicand == 1);
}

TEST_CASE("parse_rational accepts integers, fractions, decimals and exponents") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
  CHECK(parse_rational(" 2E2 ") == 200);
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.36) == "0.36");
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-2.0) == "-2");
  CHECK(format_double(0.1 + 0.2) == "0.30000000000000004");
}

TEST_CASE("to_double rounds rationals correctly") {
  CHECK(to_double(Rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(Rational(9, 25)) == 0.36);
  Rational tiny(1, Integer(1) << 1100);
  CHECK(to_double(tiny) == 0.0);
}

TEST_CASE("SqrtSum canonical form and arithmetic") {
  SqrtSum r2 = SqrtSum::sqrt_of(2);
  SqrtSum r8 = SqrtSum::sqrt_of(8);
  CHECK(r8 == SqrtSum::term(2, 2));
  CHECK(r2 * r2 == SqrtSum(2L));
  CHECK((r8 - r2 - r2).is_zero());
  CHECK(SqrtSum::sqrt_of(Rational(9, 4)) == SqrtSum(Rational(3, 2)));
  CHECK(SqrtSum::sqrt_of(Rational(1, 2)).str() == "1/2*sqrt(2)");
  SqrtSum mixed = SqrtSum(Rational(-1, 3)) + SqrtSum::term(2, 5);
  CHECK(mixed.str() == "-1/3+2*sqrt(5)");
  CHECK_FALSE(mixed.is_rational());
  CHECK_THROWS_AS(mixed.rational(), Error);
  CHECK_THROWS_AS(SqrtSum::sqrt_of(-1), Error);
}

TEST_CASE("SqrtSum sign resolves near cancellations") {
  // 1393/985 is a continued-fraction convergent of sqrt(2), below it by ~3.6e-7.
  SqrtSum d = SqrtSum(Rational(1393, 985)) - SqrtSum::sqrt_of(2);
  CHECK(d.sign() < 0);
  // 665857/470832 is off by ~1.6e-12.
  SqrtSum e = SqrtSum::sqrt_of(2) - SqrtSum(Rational(665857, 470832));
  CHECK(e.sign() < 0);
  // sqrt(2) + sqrt(3) versus sqrt(5 + 2 sqrt(6)) squared: (sqrt2+sqrt3)^2 = 5 + 2 sqrt6.
  SqrtSum s = SqrtSum::sqrt_of(2) + SqrtSum::sqrt_of(3);
  CHECK(s * s == SqrtSum(5L) + SqrtSum::term(2, 6));
  CHECK(SqrtSum::compare(SqrtSum::sqrt_of(2) + SqrtSum::sqrt_of(3), SqrtSum::sqrt_of(10)) < 0);
  CHECK(SqrtSum().sign() == 0);
}

TEST_CASE("SqrtSum inverse over several radicals") {
  SqrtSum a = SqrtSum(1L) + SqrtSum::sqrt_of(2) + SqrtSum::sqrt_of(3) + SqrtSum::sqrt_of(6);
  SqrtSum inv = a.inverse();
  CHECK(a * inv == SqrtSum(1L));
  SqrtSum b = SqrtSum::sqrt_of(5) - SqrtSum(2L);
  CHECK((SqrtSum(1L) / b) * b == SqrtSum(1L));
  CHECK_THROWS_AS(SqrtSum().inverse(), Error);
}

TEST_CASE("SqrtSum to_double is correctly rounded") {
  CHECK(SqrtSum::sqrt_of(2).to_double() == std::sqrt(2.0));
  CHECK(SqrtSum::sqrt_of(Rational(11, 100)).to_double() == std::sqrt(0.11));
  SqrtSum x = SqrtSum::sqrt_of(3) - SqrtSum::sqrt_of(2);
  CHECK(x.to_double() == doctest::Approx(0.31783724519578205).epsilon(1e-15));
}

TEST_CASE("Scalar comparisons across modes") {
  CHECK(compare(Scalar(0.5), Scalar(Rational(1, 2))) == 0);
  CHECK(compare(Scalar(0.1), Scalar(Rational(1, 10))) > 0);  // 0.1 is above 1/10 in binary
  CHECK(compare(Rational(1, 2), Scalar(SqrtSum::sqrt_of(Rational(1, 4)))) == 0);
  CHECK(compare(Rational(7, 10), Scalar(SqrtSum::sqrt_of(Rational(1, 2)))) < 0);
  CHECK(Scalar(SqrtSum::sqrt_of(2)).exact_string() == "sqrt(2)");
  CHECK_FALSE(Scalar(0.25).exact_string().has_value());
  CHECK(Scalar(0.25).decimal_string() == "0.25");
}
