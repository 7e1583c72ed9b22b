#include "rsum/report.hpp"

#include <sstream>

namespace rsum::report {

namespace {

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

Json number(const Scalar& v) {
  Json out = {{"decimal", v.decimal_string()}};
  if (auto exact = v.exact_string()) out["exact"] = *exact;
  return out;
}

Json number(const Rational& q) { return {{"decimal", format_double(to_double(q))}, {"exact", q.get_str()}}; }

Json number(double v) { return {{"decimal", format_double(v)}}; }

Json weights(const WeightVector& w) {
  Json values = Json::array();
  for (std::size_t i = 0; i < w.size(); ++i) values.push_back(number(w.value(i)));
  return {{"input", w.str()}, {"mode", to_string(w.mode())}, {"n", w.size()}, {"case", to_string(case_of(w))},
          {"values", std::move(values)}};
}

Json threshold(const WeightVector& w, const Scalar& t, bool strict, const ThresholdResult& result) {
  Json out = {{"weights", weights(w)},
              {"t", number(t)},
              {"strict", strict},
              {"count", result.count},
              {"patterns", number(power_of_two(result.n))},
              {"probability", number(result.probability())}};
  if (!w.exact()) out["near_boundary"] = result.near_boundary;
  return out;
}

Json partition(const WeightVector& w, const PartitionReport& report,
               const std::vector<ConditionalLinkViolation>& violations) {
  Json events = Json::array();
  Rational sum = 0;
  for (const auto& e : report.events) {
    auto cond = e.conditional();
    sum += e.probability(report.n);
    events.push_back({{"k", e.k},
                      {"count", e.count},
                      {"joint_count", e.joint},
                      {"probability", number(e.probability(report.n))},
                      {"joint", number(e.joint_probability(report.n))},
                      {"conditional", cond ? number(*cond) : Json(nullptr)}});
  }
  Json bad = Json::array();
  for (const auto& v : violations) {
    bad.push_back({{"k", v.k}, {"conditional", number(v.conditional)}, {"bound", number(v.bound)}});
  }
  Json out = {{"weights", weights(w)},
              {"events", std::move(events)},
              {"probability_sum", number(sum)},
              {"total_probability", number(report.total_probability())},
              {"conditional_link_violations", std::move(bad)}};
  if (!w.exact()) out["near_boundary"] = report.near_boundary;
  return out;
}

Json certificate(const Certificate& cert) {
  Json intermediates;
  if (const auto* c1 = std::get_if<Case1Intermediates>(&cert.intermediates)) {
    intermediates = {{"m2", number(c1->m2)},         {"m4", number(c1->m4)},
                     {"denom2", number(c1->denom2)}, {"denom4", number(c1->denom4)},
                     {"term2", number(c1->term2)},   {"term4", number(c1->term4)}};
  } else {
    const auto& c2 = std::get<Case2Intermediates>(cert.intermediates);
    Json rows = Json::array();
    for (const auto& r : c2.per_k) {
      rows.push_back({{"k", r.k},
                      {"x_next", number(r.x_next)},
                      {"g_value", number(r.g)},
                      {"h_value", number(r.h)},
                      {"max_value", number(r.max)},
                      {"clamped", number(r.clamped)}});
    }
    intermediates = {{"per_k", std::move(rows)}, {"argmin_k", c2.argmin_k ? Json(*c2.argmin_k) : Json(nullptr)}};
  }
  Json out = {{"case", to_string(cert.tag)},
              {"mode", to_string(cert.mode)},
              {"n", cert.n},
              {"intermediates", std::move(intermediates)},
              {"final_bound", number(cert.final_bound)},
              {"floor", number(cert.floor)},
              {"floor_ok", cert.floor_ok}};
  if (cert.tag == CaseTag::case1) out["term_floors_ok"] = cert.term_floors_ok;
  if (cert.sound_against) {
    out["sound_against"] = number(*cert.sound_against);
    out["sound"] = *cert.sound;
  }
  out["ok"] = cert.ok();
  return out;
}

Json hybrid(const HybridBound& bound) {
  return {{"hybrid_bound", number(bound.value)},
          {"case2_bound", number(bound.case2_bound)},
          {"exact", number(bound.exact)},
          {"ordered", bound.ordered}};
}

Json decomposition(const DecompositionReport& r) {
  return {{"lhs", number(r.lhs)},
          {"rhs", number(r.rhs)},
          {"tail_wide", number(r.tail_wide)},
          {"tail_narrow", number(r.tail_narrow)},
          {"term2", number(r.term2)},
          {"term4", number(r.term4)},
          {"chain_holds", r.chain_holds},
          {"second_moment_link", r.second_moment_link},
          {"fourth_moment_link", r.fourth_moment_link},
          {"ok", r.ok()}};
}

Json estimate(const EstimateCI& ci, const Scalar& t) {
  return {{"t", number(t)},
          {"estimate", number(ci.estimate)},
          {"lower", number(ci.lower)},
          {"upper", number(ci.upper)},
          {"half_width", number(ci.half_width)},
          {"confidence", number(ci.confidence)},
          {"samples", ci.samples},
          {"hits", ci.hits},
          {"seed", ci.seed},
          {"interval", "wilson"},
          {"generator", "mt19937_64"}};
}

Json search(const SearchResult& result, unsigned n, std::uint64_t budget, std::uint64_t seed) {
  Json trajectory = Json::array();
  for (const auto& s : result.trajectory) {
    trajectory.push_back({{"evaluation", s.evaluation}, {"probability", number(s.probability)}});
  }
  return {{"n", n},
          {"budget", budget},
          {"seed", seed},
          {"best_w", weights(result.best_w)},
          {"best_prob", number(result.best_prob)},
          {"best_margin", number(result.best_margin)},
          {"trajectory", std::move(trajectory)},
          {"budget_used", result.budget_used},
          {"restarts", result.restarts},
          {"counterexample_candidate", result.counterexample_candidate}};
}

Json lemma_violations(const LemmaSweep& sweep) {
  Json out = Json::array();
  for (const auto& v : sweep.violations) {
    out.push_back({{"k", v.k}, {"check", v.check}, {"x", number(v.x)}, {"detail", v.detail}});
  }
  return out;
}

std::string distribution_csv(const SumDistribution& dist) {
  std::ostringstream out;
  out << "value,exact_value,count\n";
  for (std::size_t i = 0; i < dist.entries().size(); ++i) {
    Scalar v = dist.value(i);
    out << format_double(dist.entries()[i].approx) << ',' << v.exact_string().value_or("") << ','
        << dist.entries()[i].count << '\n';
  }
  return out.str();
}

std::string lemma_csv(const LemmaSweep& sweep) {
  std::ostringstream out;
  out << "k,crossing_x,g_at_crossing,h_at_crossing,minmax,monotone_g_ok,monotone_h_ok,crossing_ok,argmin_ok,"
         "minmax_monotone_ok\n";
  for (const auto& r : sweep.rows) {
    out << r.k << ',' << format_double(to_double(r.crossing_x)) << ',' << format_double(to_double(r.g_at_crossing))
        << ',' << format_double(to_double(r.h_at_crossing)) << ',' << format_double(to_double(r.minmax)) << ','
        << flag(r.monotone_g_ok) << ',' << flag(r.monotone_h_ok) << ',' << flag(r.crossing_ok) << ','
        << flag(r.argmin_ok) << ',' << flag(r.minmax_monotone_ok) << '\n';
  }
  return out.str();
}

}  // namespace rsum::report
