#include <doctest.h>

#include <cstring>
#include <string>

#include "rsum/rsum.h"

TEST_CASE("weights handle") {
  rsum_weights* w = nullptr;
  REQUIRE(rsum_weights_parse("sq:16/25,9/25", RSUM_MODE_AUTO, &w) == RSUM_OK);
  CHECK(rsum_weights_size(w) == 2);
  CHECK(rsum_weights_mode(w) == RSUM_MODE_EXACT);
  CHECK(rsum_weights_get(w, 0) == 0.8);
  CHECK(rsum_weights_get(w, 5) == 0.0);
  CHECK(rsum_weights_case(w) == 1);
  char* s = nullptr;
  REQUIRE(rsum_weights_string(w, &s) == RSUM_OK);
  CHECK(std::string(s) == "sq:16/25,9/25");
  rsum_string_free(s);
  rsum_weights_free(w);

  double raw[] = {-3, 4};
  REQUIRE(rsum_weights_from_doubles(raw, 2, &w) == RSUM_OK);
  CHECK(rsum_weights_mode(w) == RSUM_MODE_FLOAT);
  CHECK(rsum_weights_get(w, 0) == doctest::Approx(0.8));
  rsum_weights_free(w);
}

TEST_CASE("error statuses and messages") {
  rsum_weights* w = nullptr;
  CHECK(rsum_weights_parse("0,0", RSUM_MODE_AUTO, &w) == RSUM_DEGENERATE_VECTOR);
  CHECK(std::string(rsum_last_error()).find("degenerate vector") != std::string::npos);
  CHECK(rsum_weights_parse("1,x", RSUM_MODE_AUTO, &w) == RSUM_INVALID_INPUT);
  CHECK(rsum_weights_parse(nullptr, RSUM_MODE_AUTO, &w) == RSUM_INVALID_INPUT);

  REQUIRE(rsum_weights_parse("0.8,0.6", RSUM_MODE_AUTO, &w) == RSUM_OK);
  char* json = nullptr;
  CHECK(rsum_partition_json(w, nullptr, &json) == RSUM_WRONG_CASE);
  CHECK(json == nullptr);
  rsum_options opts;
  rsum_options_default(&opts);
  CHECK(opts.full_limit == 24);
  CHECK(opts.mitm_limit == 40);
  opts.mitm_limit = 1;
  CHECK(rsum_threshold_json(w, "1", 0, &opts, &json, nullptr) == RSUM_INSTANCE_TOO_LARGE);
  CHECK(std::string(rsum_last_error()).find("limit of 1") != std::string::npos);
  rsum_weights_free(w);

  double out = 0;
  CHECK(rsum_g(2, 2.0, &out) == RSUM_DOMAIN_ERROR);
  CHECK(rsum_g(2, 1.0 / 3.0, &out) == RSUM_OK);
  CHECK(out == doctest::Approx(0.36));
  CHECK(rsum_h(2, 0.0, &out) == RSUM_OK);
  CHECK(out == doctest::Approx(7.0 / 16.0));
  CHECK(std::strcmp(rsum_status_name(RSUM_SOUNDNESS_VIOLATION), "soundness violation") == 0);
}

TEST_CASE("documents") {
  rsum_weights* w = nullptr;
  REQUIRE(rsum_weights_parse("sq:1/4,1/4,1/4,1/4", RSUM_MODE_AUTO, &w) == RSUM_OK);
  char* json = nullptr;
  double p = 0;
  REQUIRE(rsum_threshold_json(w, "1", 1, nullptr, &json, &p) == RSUM_OK);
  CHECK(p == 0.375);
  CHECK(std::string(json).find("\"3/8\"") != std::string::npos);
  rsum_string_free(json);

  REQUIRE(rsum_certify_json(w, RSUM_CHECK_ALWAYS, nullptr, &json) == RSUM_OK);
  CHECK(std::string(json).find("\"7/18\"") != std::string::npos);
  rsum_string_free(json);

  REQUIRE(rsum_hybrid_json(w, nullptr, &json) == RSUM_OK);
  CHECK(std::string(json).find("\"25/36\"") != std::string::npos);
  rsum_string_free(json);

  char* csv = nullptr;
  REQUIRE(rsum_distribution_csv(w, nullptr, &csv) == RSUM_OK);
  CHECK(std::string(csv).rfind("value,exact_value,count\n", 0) == 0);
  rsum_string_free(csv);

  REQUIRE(rsum_monte_carlo_json(w, nullptr, 100, 1, 0.99, &json) == RSUM_OK);
  rsum_string_free(json);
  rsum_weights_free(w);

  char* violations = nullptr;
  REQUIRE(rsum_lemmas(10, 101, &csv, &violations) == RSUM_OK);
  CHECK(std::string(violations) == "[]\n");
  rsum_string_free(csv);
  rsum_string_free(violations);

  REQUIRE(rsum_search_json(2, 50, 0, nullptr, &json) == RSUM_OK);
  rsum_string_free(json);
}
