#include "rsum/rsum.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "rsum/bounds.hpp"
#include "rsum/exact_engine.hpp"
#include "rsum/explore.hpp"
#include "rsum/report.hpp"
#include "rsum/weights.hpp"

struct rsum_weights {
  rsum::WeightVector value;
};

namespace {

thread_local std::string last_error;

rsum_status status_of(rsum::ErrorCode code) {
  switch (code) {
    case rsum::ErrorCode::invalid_input: return RSUM_INVALID_INPUT;
    case rsum::ErrorCode::degenerate_vector: return RSUM_DEGENERATE_VECTOR;
    case rsum::ErrorCode::instance_too_large: return RSUM_INSTANCE_TOO_LARGE;
    case rsum::ErrorCode::wrong_case: return RSUM_WRONG_CASE;
    case rsum::ErrorCode::domain_error: return RSUM_DOMAIN_ERROR;
    case rsum::ErrorCode::out_of_range: return RSUM_OUT_OF_RANGE;
    case rsum::ErrorCode::internal: return RSUM_INTERNAL;
  }
  return RSUM_INTERNAL;
}

// Runs body() and converts exceptions into status codes.
template <class Body>
rsum_status guarded(Body body) {
  try {
    last_error.clear();
    return body();
  } catch (const rsum::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return RSUM_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return RSUM_INTERNAL;
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

std::string dump(const rsum::report::Json& doc) { return doc.dump(2) + "\n"; }

rsum::EngineOptions engine_options(const rsum_options* options) {
  rsum::EngineOptions out;
  if (options != nullptr) {
    out.full_limit = options->full_limit;
    out.mitm_limit = options->mitm_limit;
    out.threads = options->threads;
  }
  return out;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw rsum::Error(rsum::ErrorCode::invalid_input, std::string("invalid input: null ") + what);
}

rsum::Scalar threshold(const rsum::WeightVector& w, const char* text) {
  rsum::Rational t = text == nullptr ? rsum::Rational(1) : rsum::parse_rational(text);
  if (w.exact()) return rsum::Scalar(t);
  return rsum::Scalar(rsum::to_double(t));
}

rsum_status flagged(bool sound, const char* message) {
  if (sound) return RSUM_OK;
  last_error = message;
  return RSUM_SOUNDNESS_VIOLATION;
}

}  // namespace

extern "C" {

const char* rsum_version(void) { return "0.1.0"; }

const char* rsum_last_error(void) { return last_error.c_str(); }

const char* rsum_status_name(rsum_status status) {
  switch (status) {
    case RSUM_OK: return "ok";
    case RSUM_INVALID_INPUT: return "invalid input";
    case RSUM_DEGENERATE_VECTOR: return "degenerate vector";
    case RSUM_INSTANCE_TOO_LARGE: return "instance too large";
    case RSUM_WRONG_CASE: return "wrong case";
    case RSUM_DOMAIN_ERROR: return "domain error";
    case RSUM_OUT_OF_RANGE: return "out of range";
    case RSUM_SOUNDNESS_VIOLATION: return "soundness violation";
    case RSUM_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void rsum_options_default(rsum_options* options) {
  if (options == nullptr) return;
  rsum::EngineOptions d;
  options->full_limit = d.full_limit;
  options->mitm_limit = d.mitm_limit;
  options->threads = d.threads;
}

void rsum_string_free(char* text) { std::free(text); }

rsum_status rsum_weights_parse(const char* text, rsum_mode mode, rsum_weights** out) {
  return guarded([&] {
    require(text, "weight string");
    require(out, "output pointer");
    std::optional<rsum::NumericMode> m;
    if (mode == RSUM_MODE_EXACT) m = rsum::NumericMode::exact;
    if (mode == RSUM_MODE_FLOAT) m = rsum::NumericMode::floating;
    *out = new rsum_weights{rsum::WeightVector::parse(text, m)};
    return RSUM_OK;
  });
}

rsum_status rsum_weights_from_doubles(const double* values, size_t n, rsum_weights** out) {
  return guarded([&] {
    require(out, "output pointer");
    if (n > 0) require(values, "value array");
    *out = new rsum_weights{
        rsum::WeightVector::canonicalize(std::span<const double>(values, n), rsum::NumericMode::floating)};
    return RSUM_OK;
  });
}

void rsum_weights_free(rsum_weights* weights) { delete weights; }

size_t rsum_weights_size(const rsum_weights* weights) { return weights ? weights->value.size() : 0; }

rsum_mode rsum_weights_mode(const rsum_weights* weights) {
  if (weights == nullptr) return RSUM_MODE_AUTO;
  return weights->value.exact() ? RSUM_MODE_EXACT : RSUM_MODE_FLOAT;
}

double rsum_weights_get(const rsum_weights* weights, size_t i) { return weights ? weights->value.approx(i) : 0.0; }

int rsum_weights_case(const rsum_weights* weights) {
  if (weights == nullptr) return 0;
  return rsum::case_of(weights->value) == rsum::CaseTag::case1 ? 1 : 2;
}

rsum_status rsum_weights_string(const rsum_weights* weights, char** out) {
  return guarded([&] {
    require(weights, "weights");
    require(out, "output pointer");
    *out = duplicate(weights->value.str());
    return RSUM_OK;
  });
}

rsum_status rsum_threshold_json(const rsum_weights* weights, const char* t, int strict, const rsum_options* options,
                                char** json, double* probability) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    const auto& w = weights->value;
    rsum::Scalar tv = threshold(w, t);
    auto result = rsum::threshold_probability(w, tv, strict != 0, engine_options(options));
    *json = duplicate(dump(rsum::report::threshold(w, tv, strict != 0, result)));
    if (probability != nullptr) *probability = rsum::to_double(result.probability());
    return RSUM_OK;
  });
}

rsum_status rsum_distribution_csv(const rsum_weights* weights, const rsum_options* options, char** csv) {
  return guarded([&] {
    require(weights, "weights");
    require(csv, "output pointer");
    auto dist = rsum::sum_distribution(weights->value, engine_options(options));
    *csv = duplicate(rsum::report::distribution_csv(dist));
    return RSUM_OK;
  });
}

rsum_status rsum_partition_json(const rsum_weights* weights, const rsum_options* options, char** json) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    const auto& w = weights->value;
    auto report = rsum::prefix_partition(w, engine_options(options));
    auto violations = rsum::conditional_link_violations(w, report);
    *json = duplicate(dump(rsum::report::partition(w, report, violations)));
    rsum::Rational sum = 0;
    for (const auto& e : report.events) sum += e.probability(report.n);
    return flagged(violations.empty() && sum == 1, "soundness violation: partition identity or conditional link failed");
  });
}

rsum_status rsum_certify_json(const rsum_weights* weights, rsum_exact_check check, const rsum_options* options,
                              char** json) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    rsum::ExactCheck mode = check == RSUM_CHECK_ALWAYS  ? rsum::ExactCheck::always
                            : check == RSUM_CHECK_NEVER ? rsum::ExactCheck::never
                                                        : rsum::ExactCheck::automatic;
    auto cert = rsum::theorem_bound(weights->value, mode, engine_options(options));
    *json = duplicate(dump(rsum::report::certificate(cert)));
    return flagged(cert.ok(), "soundness violation: certificate below its floor or above the exact probability");
  });
}

rsum_status rsum_hybrid_json(const rsum_weights* weights, const rsum_options* options, char** json) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    auto bound = rsum::hybrid_bound(weights->value, engine_options(options));
    *json = duplicate(dump(rsum::report::hybrid(bound)));
    return flagged(bound.ordered, "soundness violation: hybrid bound out of order");
  });
}

rsum_status rsum_decomposition_json(const rsum_weights* weights, const rsum_options* options, char** json) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    auto report = rsum::decomposition_check(weights->value, engine_options(options));
    *json = duplicate(dump(rsum::report::decomposition(report)));
    return flagged(report.ok(), "soundness violation: a decomposition link failed");
  });
}

rsum_status rsum_monte_carlo_json(const rsum_weights* weights, const char* t, uint64_t samples, uint64_t seed,
                                  double confidence, char** json) {
  return guarded([&] {
    require(weights, "weights");
    require(json, "output pointer");
    const auto& w = weights->value;
    rsum::Scalar tv = threshold(w, t);
    auto ci = rsum::monte_carlo(w, tv, samples, seed, confidence);
    *json = duplicate(dump(rsum::report::estimate(ci, tv)));
    return RSUM_OK;
  });
}

rsum_status rsum_lemmas(unsigned k_max, size_t grid_points, char** csv, char** violations) {
  return guarded([&] {
    require(csv, "output pointer");
    auto sweep = rsum::lemma_sweep(k_max, grid_points);
    *csv = duplicate(rsum::report::lemma_csv(sweep));
    if (violations != nullptr) *violations = duplicate(dump(rsum::report::lemma_violations(sweep)));
    return flagged(sweep.ok(), "soundness violation: lemma sweep found violations");
  });
}

rsum_status rsum_search_json(unsigned n, uint64_t budget, uint64_t seed, const rsum_options* options, char** json) {
  return guarded([&] {
    require(json, "output pointer");
    auto result = rsum::minimize_probability(n, budget, seed, engine_options(options));
    *json = duplicate(dump(rsum::report::search(result, n, budget, seed)));
    return flagged(!result.counterexample_candidate,
                   "soundness violation: counterexample candidate, search found probability below 9/25");
  });
}

rsum_status rsum_g(unsigned k, double x, double* out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = rsum::g(k, x);
    return RSUM_OK;
  });
}

rsum_status rsum_h(unsigned k, double x, double* out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = rsum::h(k, x);
    return RSUM_OK;
  });
}

}  // extern "C"
