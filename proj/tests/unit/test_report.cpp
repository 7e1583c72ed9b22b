#include <doctest.h>

#include "rsum/report.hpp"

using namespace rsum;

TEST_CASE("numbers carry decimal and exact forms") {
  auto a = report::number(Scalar(SqrtSum(Rational(9, 25))));
  CHECK(a["decimal"] == "0.36");
  CHECK(a["exact"] == "9/25");
  auto b = report::number(Scalar(0.25));
  CHECK(b["decimal"] == "0.25");
  CHECK_FALSE(b.contains("exact"));
  auto c = report::number(Rational(7, 8));
  CHECK(c["exact"] == "7/8");
  CHECK(report::number(Scalar(SqrtSum::sqrt_of(Rational(1, 2))))["exact"] == "1/2*sqrt(2)");
}

TEST_CASE("certificate JSON fields") {
  auto cert = theorem_bound(WeightVector::parse("sq:1/4,1/4,1/4,1/4"));
  auto j = report::certificate(cert);
  CHECK(j["case"] == "case2");
  CHECK(j["final_bound"]["exact"] == "7/18");
  CHECK(j["sound_against"]["exact"] == "7/8");
  CHECK(j["intermediates"]["per_k"].size() == 2);
  CHECK(j["intermediates"]["per_k"][0]["g_value"]["exact"] == "7/18");
  CHECK(j["intermediates"]["argmin_k"] == 2);
  CHECK(j["ok"] == true);

  auto c1 = report::certificate(case1_certificate(WeightVector::parse("sq:16/25,9/25")));
  CHECK(c1["case"] == "case1");
  for (const char* key : {"m2", "m4", "denom2", "denom4", "term2", "term4"}) CHECK(c1["intermediates"].contains(key));
  CHECK_FALSE(c1.contains("sound_against"));
}

TEST_CASE("distribution CSV") {
  auto csv = report::distribution_csv(sum_distribution(WeightVector::parse("sq:1/4,1/4,1/4,1/4")));
  CHECK(csv == "value,exact_value,count\n-2,-2,1\n-1,-1,4\n0,0,6\n1,1,4\n2,2,1\n");
  auto f = report::distribution_csv(sum_distribution(WeightVector::parse("1,1")));
  CHECK(f == "value,exact_value,count\n-1.4142135623730951,,1\n0,,2\n1.4142135623730951,,1\n");
}

TEST_CASE("lemma CSV") {
  auto csv = report::lemma_csv(lemma_sweep(3, 101));
  CHECK(csv ==
        "k,crossing_x,g_at_crossing,h_at_crossing,minmax,monotone_g_ok,monotone_h_ok,crossing_ok,argmin_ok,"
        "minmax_monotone_ok\n"
        "2,0.3333333333333333,0.36,0.36,0.36,true,true,true,true,true\n"
        "3,0.25,0.3673469387755102,0.3673469387755102,0.3673469387755102,true,true,true,true,true\n");
}

TEST_CASE("partition JSON") {
  auto w = WeightVector::parse("sq:1/4,1/4,1/4,1/4");
  auto p = prefix_partition(w);
  auto j = report::partition(w, p, conditional_link_violations(w, p));
  CHECK(j["events"].size() == 3);
  CHECK(j["events"][1]["conditional"].is_null());
  CHECK(j["total_probability"]["exact"] == "7/8");
  CHECK(j["probability_sum"]["exact"] == "1");
  CHECK(j["conditional_link_violations"].empty());
}
