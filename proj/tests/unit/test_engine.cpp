#include <doctest.h>

#include <string>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "rsum/exact_engine.hpp"

using namespace rsum;

namespace {

Rational prob(const char* w, const Scalar& t, bool strict = false, EngineOptions opts = {}) {
  return threshold_probability(WeightVector::parse(w), t, strict, opts).probability();
}

const Scalar kOne = Scalar(SqrtSum(1L));

}  // namespace

TEST_CASE("threshold probability examples") {
  CHECK(prob("sq:1", kOne) == 1);
  CHECK(prob("sq:1/2,1/2", kOne) == Rational(1, 2));
  CHECK(prob("sq:1/3,1/3,1/3", kOne) == Rational(3, 4));
  CHECK(prob("sq:1,1,1,1,1,1,1,1,1", kOne) == Rational(105, 128));
  CHECK(prob("sq:1/4,1/4,1/4,1/4", kOne, true) == Rational(3, 8));
  CHECK(prob("sq:1/4,1/4,1/4,1/4", kOne, false) == Rational(7, 8));
  CHECK(prob("1,1,1,1", Scalar(1.0), true) == Rational(3, 8));
  CHECK(prob("1,1,1,1", Scalar(1.0), false) == Rational(7, 8));
}

TEST_CASE("nine-weight binomial oracle") {
  // |#heads - #tails| / 3 <= 1  <=>  heads in {3..6}
  Integer hits = 0;
  for (unsigned h = 3; h <= 6; ++h) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), 9, h);
    hits += c;
  }
  CHECK(testing::dyadic(hits, 9) == prob("sq:1,1,1,1,1,1,1,1,1", kOne));
}

TEST_CASE("strict threshold zero admits nothing") {
  CHECK(prob("sq:1/2,1/2", Scalar(SqrtSum()), true) == 0);
  CHECK(prob("sq:1/2,1/2", Scalar(SqrtSum()), false) == Rational(1, 2));
}

TEST_CASE("meet-in-the-middle equals naive enumeration") {
  testing::Gen gen(101);
  for (int trial = 0; trial < 120; ++trial) {
    WeightVector w = testing::exact_unit_vector(gen, 11);
    SqrtSum t = trial % 3 == 0 ? SqrtSum(1L) : SqrtSum(Rational(gen.integer(0, 40), 20));
    if (trial % 7 == 0) t = w.value(0).exact_value();  // lands exactly on achievable sums
    for (bool strict : {false, true}) {
      CAPTURE(w.str());
      CAPTURE(t.str());
      CHECK(threshold_probability(w, t, strict).probability() == testing::naive_probability(w, t, strict));
    }
  }
}

TEST_CASE("float mode matches exact evaluation away from ties") {
  testing::Gen gen(33);
  for (int trial = 0; trial < 60; ++trial) {
    WeightVector w = testing::float_unit_vector(gen, static_cast<std::size_t>(gen.integer(1, 11)));
    auto r = threshold_probability(w, Scalar(1.0), false);
    if (r.near_boundary != 0) continue;
    CHECK(r.probability() == testing::naive_probability(w, SqrtSum(1L), false));
  }
}

TEST_CASE("float ties are surfaced") {
  // 0.5 + 0.5 = 1 exactly: half the patterns sit on the boundary.
  auto r = threshold_probability(WeightVector::parse("1,1,1,1"), Scalar(1.0), false);
  CHECK(r.near_boundary == 8);
  // 0.8 and 0.6 are inexact, 0.8 + 0.6 is not near 1.
  CHECK(threshold_probability(WeightVector::parse("0.8,0.6"), Scalar(1.0), false).near_boundary == 0);
}

TEST_CASE("strict and non-strict differ by Pr(|S| = t)") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    WeightVector w = testing::exact_unit_vector(gen, 10);
    auto dist = sum_distribution(w);
    std::size_t pick = static_cast<std::size_t>(gen.integer(0, static_cast<long>(dist.entries().size() - 1)));
    SqrtSum v = dist.value(pick).exact_value();
    SqrtSum t = v.sign() < 0 ? -v : v;
    Rational at = threshold_probability(w, t, false).probability() - threshold_probability(w, t, true).probability();
    Integer hits = 0;
    for (std::size_t i = 0; i < dist.entries().size(); ++i) {
      SqrtSum u = dist.value(i).exact_value();
      if ((u.sign() < 0 ? -u : u) == t) hits += static_cast<unsigned long>(dist.entries()[i].count);
    }
    CHECK(at == testing::dyadic(hits, w.size()));
    CHECK(at > 0);
  }
}

TEST_CASE("threshold probability is monotone in t and reaches 1") {
  testing::Gen gen(9);
  for (int trial = 0; trial < 30; ++trial) {
    WeightVector w = testing::exact_unit_vector(gen, 12);
    Rational previous = 0;
    for (int step = 0; step <= 40; ++step) {
      Rational t(step, 10);
      t.canonicalize();
      Rational p = threshold_probability(w, Scalar(t), false).probability();
      CHECK(p >= previous);
      previous = p;
    }
    // |eps^T x| <= sum x_i <= sqrt(n)
    CHECK(threshold_probability(w, Scalar(Rational(4)), false).probability() == 1);
  }
}

TEST_CASE("sum distribution examples") {
  auto d1 = sum_distribution(WeightVector::parse("sq:1"));
  REQUIRE(d1.entries().size() == 2);
  CHECK(d1.value(0).exact_value() == SqrtSum(-1L));
  CHECK(d1.entries()[1].count == 1);

  auto d2 = sum_distribution(WeightVector::parse("0.8,0.6"));
  REQUIRE(d2.entries().size() == 4);
  CHECK(d2.entries()[0].approx == doctest::Approx(-1.4));
  CHECK(d2.entries()[1].approx == doctest::Approx(-0.2));
  CHECK(d2.entries()[2].approx == doctest::Approx(0.2));
  CHECK(d2.entries()[3].approx == doctest::Approx(1.4));

  auto d3 = sum_distribution(WeightVector::parse("sq:1/4,1/4,1/4,1/4"));
  REQUIRE(d3.entries().size() == 5);
  const std::uint64_t counts[] = {1, 4, 6, 4, 1};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(d3.value(i).exact_value() == SqrtSum(static_cast<long>(i) - 2));
    CHECK(d3.entries()[i].count == counts[i]);
  }
}

TEST_CASE("sum distribution invariants") {
  testing::Gen gen(12);
  for (int trial = 0; trial < 40; ++trial) {
    WeightVector w = trial % 2 ? testing::exact_unit_vector(gen, 10)
                               : testing::float_unit_vector(gen, static_cast<std::size_t>(gen.integer(1, 10)));
    auto dist = sum_distribution(w);
    const auto& e = dist.entries();
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      total += e[i].count;
      CHECK(e[i].count == e[e.size() - 1 - i].count);
      if (i > 0) CHECK(compare(dist.value(i - 1), dist.value(i)) < 0);
      if (w.exact()) CHECK(dist.value(i).exact_value() == -dist.value(e.size() - 1 - i).exact_value());
    }
    CHECK(total == (std::uint64_t{1} << w.size()));
    Scalar one = w.exact() ? kOne : Scalar(1.0);
    CHECK(dist.probability_within(one, false) == threshold_probability(w, one, false).probability());
    CHECK(dist.probability_within(one, true) == threshold_probability(w, one, true).probability());
  }
}

TEST_CASE("prefix partition examples") {
  auto r = prefix_partition(WeightVector::parse("sq:1/4,1/4,1/4,1/4"));
  REQUIRE(r.events.size() == 3);
  CHECK(r.event(2).probability(4) == Rational(1, 2));
  CHECK(r.event(3).probability(4) == 0);
  CHECK(r.event(4).probability(4) == Rational(1, 2));
  CHECK(*r.event(2).conditional() == Rational(3, 4));
  CHECK_FALSE(r.event(3).conditional().has_value());
  CHECK(*r.event(4).conditional() == 1);
  CHECK(r.total_probability() == Rational(7, 8));

  auto unit = prefix_partition(WeightVector::parse("sq:1,0"));
  REQUIRE(unit.events.size() == 1);
  CHECK(unit.event(2).probability(2) == 1);
  CHECK(*unit.event(2).conditional() == 1);
  CHECK(unit.total_probability() == 1);
}

TEST_CASE("prefix partition errors") {
  CHECK_THROWS_AS(prefix_partition(WeightVector::parse("sq:1")), Error);
  try {
    prefix_partition(WeightVector::parse("0.8,0.6"));
    FAIL("expected wrong_case");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::wrong_case);
  }
  EngineOptions small;
  small.full_limit = 5;
  try {
    prefix_partition(WeightVector::parse("sq:1,1,1,1,1,1"), small);
    FAIL("expected instance_too_large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::instance_too_large);
    CHECK(std::string(e.what()).find("limit of 5") != std::string::npos);
  }
}

TEST_CASE("prefix partition matches the naive classification") {
  testing::Gen gen(21);
  int tested = 0;
  while (tested < 60) {
    WeightVector w = testing::exact_unit_vector(gen, 11);
    if (w.size() < 2 || case_of(w) != CaseTag::case2) continue;
    ++tested;
    auto r = prefix_partition(w);
    auto naive = testing::naive_partition(w);
    Rational sum = 0;
    for (const auto& e : r.events) {
      CAPTURE(w.str());
      CAPTURE(e.k);
      CHECK(Integer(static_cast<unsigned long>(e.count)) == naive.count[e.k]);
      CHECK(Integer(static_cast<unsigned long>(e.joint)) == naive.joint[e.k]);
      CHECK(e.joint <= e.count);
      sum += e.probability(r.n);
    }
    CHECK(sum == 1);
    if (r.event(r.n).count > 0) CHECK(*r.event(r.n).conditional() == 1);
    CHECK(r.total_probability() == threshold_probability(w, kOne, false).probability());
  }
}

TEST_CASE("float partition totals agree with the threshold count away from ties") {
  testing::Gen gen(23);
  int tested = 0;
  while (tested < 30) {
    WeightVector w = testing::float_unit_vector(gen, static_cast<std::size_t>(gen.integer(2, 14)));
    if (case_of(w) != CaseTag::case2) continue;
    ++tested;
    auto r = prefix_partition(w);
    std::uint64_t sum = 0;
    for (const auto& e : r.events) sum += e.count;
    CHECK(sum == (std::uint64_t{1} << w.size()));
    if (r.near_boundary == 0) CHECK(r.total_probability() == threshold_probability(w, Scalar(1.0), false).probability());
  }
}

TEST_CASE("results do not depend on the thread count") {
  testing::Gen gen(31);
  for (int trial = 0; trial < 6; ++trial) {
    WeightVector w = testing::vector_in_case(gen, CaseTag::case2, 14, 18, testing::rational_unit_vector);
    WeightVector f = testing::float_unit_vector(gen, 22);
    EngineOptions one, many;
    one.threads = 1;
    many.threads = 5;
    CHECK(threshold_probability(w, kOne, false, one).count == threshold_probability(w, kOne, false, many).count);
    auto a = threshold_probability(f, Scalar(1.0), false, one);
    auto b = threshold_probability(f, Scalar(1.0), false, many);
    CHECK(a.count == b.count);
    CHECK(a.near_boundary == b.near_boundary);
    auto pa = prefix_partition(w, one);
    auto pb = prefix_partition(w, many);
    for (std::size_t i = 0; i < pa.events.size(); ++i) {
      CHECK(pa.events[i].count == pb.events[i].count);
      CHECK(pa.events[i].joint == pb.events[i].joint);
    }
  }
}

TEST_CASE("size limits") {
  EngineOptions opts;
  opts.mitm_limit = 6;
  try {
    threshold_probability(WeightVector::parse("1,1,1,1,1,1,1"), Scalar(1.0), false, opts);
    FAIL("expected instance_too_large");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::instance_too_large);
    CHECK(std::string(e.what()) == "instance too large: n = 7 exceeds the meet-in-the-middle limit of 6");
  }
  opts.full_limit = 3;
  CHECK_THROWS_AS(sum_distribution(WeightVector::parse("1,1,1,1"), opts), Error);
  CHECK_THROWS_AS(threshold_probability(WeightVector::parse("1"), Scalar(-1.0), false), Error);
}

TEST_CASE("boundary margin") {
  CHECK(boundary_margin(WeightVector::parse("1,1"), 1.0) == doctest::Approx(std::sqrt(2.0) - 1));
  CHECK(boundary_margin(WeightVector::parse("1,1,1,1"), 1.0) == 0.0);
  CHECK_THROWS_AS(boundary_margin(WeightVector::parse("sq:1"), 1.0), Error);
}
