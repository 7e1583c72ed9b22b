#pragma once

// JSON and CSV renderings of every result type. A number is written as
//   {"decimal": "<shortest round-trip double>", "exact": "<exact form>"}
// where "exact" is present for exact scalars and for probabilities, which are
// always exact dyadic rationals.

#include <json.hpp>
#include <string>

#include "rsum/bounds.hpp"
#include "rsum/exact_engine.hpp"
#include "rsum/explore.hpp"
#include "rsum/weights.hpp"

namespace rsum::report {

using Json = nlohmann::ordered_json;

Json number(const Scalar& v);
Json number(const Rational& q);
Json number(double v);

Json weights(const WeightVector& w);
Json threshold(const WeightVector& w, const Scalar& t, bool strict, const ThresholdResult& result);
Json partition(const WeightVector& w, const PartitionReport& report,
               const std::vector<ConditionalLinkViolation>& violations);
Json certificate(const Certificate& cert);
Json hybrid(const HybridBound& bound);
Json decomposition(const DecompositionReport& report);
Json estimate(const EstimateCI& ci, const Scalar& t);
Json search(const SearchResult& result, unsigned n, std::uint64_t budget, std::uint64_t seed);
Json lemma_violations(const LemmaSweep& sweep);

/// value,exact_value,count; exact_value is empty in float mode.
std::string distribution_csv(const SumDistribution& dist);

/// k,crossing_x,g_at_crossing,h_at_crossing,minmax,monotone_g_ok,monotone_h_ok,
/// crossing_ok,argmin_ok,minmax_monotone_ok
std::string lemma_csv(const LemmaSweep& sweep);

}  // namespace rsum::report
