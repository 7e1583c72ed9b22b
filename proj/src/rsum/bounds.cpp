#include "rsum/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rsum/moments.hpp"

namespace rsum {

namespace {

template <class Num>
Num g_value(unsigned k, const Num& x) {
  Num two_minus = Num(2L) - x;
  Num denom = two_minus * two_minus;
  Num numer = Num(1L) - Num(static_cast<long>(k)) * x * x;
  Num ratio = numer / denom;
  Num out = (Num(1L) - ratio) / Num(2L);
  return out;
}

template <class Num>
Num h_value(unsigned k, const Num& x) {
  Num two_minus = Num(2L) - x;
  Num denom = two_minus * two_minus;
  Num one_minus = Num(1L) - x;
  Num numer = Num(1L) - one_minus * one_minus / Num(static_cast<long>(k));
  Num ratio = numer / denom;
  Num out = (Num(1L) - ratio) / Num(2L);
  return out;
}

void check_k(unsigned k) {
  if (k < 2) throw Error(ErrorCode::domain_error, "domain error: k must be at least 2, got " + std::to_string(k));
}

[[noreturn]] void outside_unit(const std::string& x) {
  throw Error(ErrorCode::domain_error, "domain error: x = " + x + " lies outside [0, 1]");
}

Scalar max_of(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0 ? a : b; }

Scalar one_like(NumericMode mode) { return mode == NumericMode::exact ? Scalar(SqrtSum(1L)) : Scalar(1.0); }

Scalar min_one(const Scalar& v) {
  Scalar one = one_like(v.exact() ? NumericMode::exact : NumericMode::floating);
  return compare(v, one) > 0 ? one : v;
}

// Exact value of a float-or-exact scalar as a SqrtSum.
SqrtSum as_sqrt_sum(const Scalar& s) { return s.exact() ? s.exact_value() : SqrtSum(Rational(s.float_value())); }

}  // namespace

Rational case1_floor() { return Rational(93, 256); }
Rational case2_floor() { return Rational(9, 25); }

Rational g(unsigned k, const Rational& x) {
  check_k(k);
  if (sgn(x) < 0 || x > 1) outside_unit(x.get_str());
  return g_value<Rational>(k, x);
}

double g(unsigned k, double x) {
  check_k(k);
  if (!(x >= 0.0 && x <= 1.0)) outside_unit(format_double(x));
  return g_value<double>(k, x);
}

Scalar g(unsigned k, const Scalar& x) {
  if (!x.exact()) return g(k, x.float_value());
  check_k(k);
  const SqrtSum& v = x.exact_value();
  if (v.sign() < 0 || (v - SqrtSum(1L)).sign() > 0) outside_unit(v.str());
  return g_value<SqrtSum>(k, v);
}

Rational h(unsigned k, const Rational& x) {
  check_k(k);
  if (sgn(x) < 0 || x > 1) outside_unit(x.get_str());
  return h_value<Rational>(k, x);
}

double h(unsigned k, double x) {
  check_k(k);
  if (!(x >= 0.0 && x <= 1.0)) outside_unit(format_double(x));
  return h_value<double>(k, x);
}

Scalar h(unsigned k, const Scalar& x) {
  if (!x.exact()) return h(k, x.float_value());
  check_k(k);
  const SqrtSum& v = x.exact_value();
  if (v.sign() < 0 || (v - SqrtSum(1L)).sign() > 0) outside_unit(v.str());
  return h_value<SqrtSum>(k, v);
}

Rational crossing_point(unsigned k) {
  check_k(k);
  Rational x(1, static_cast<unsigned long>(k) + 1);
  if (g(k, x) != h(k, x)) {
    throw Error(ErrorCode::internal, "g and h disagree at the crossing point for k = " + std::to_string(k));
  }
  return x;
}

Rational minmax_bound(unsigned k) { return g(k, crossing_point(k)); }

MinmaxVerification verify_minmax_bound(unsigned k, std::size_t grid_points) {
  check_k(k);
  if (grid_points < 3) throw Error(ErrorCode::invalid_input, "grid needs at least 3 points");
  MinmaxVerification out;
  out.value = minmax_bound(k);
  double last = static_cast<double>(grid_points - 1);
  out.grid_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    double x = static_cast<double>(i) / last;
    double v = std::max(g_value<double>(k, x), h_value<double>(k, x));
    if (v < out.grid_min) {
      out.grid_min = v;
      out.grid_argmin = x;
    }
  }
  out.tolerance = std::max(2.0 * k, 4.0) / last;
  double exact = to_double(out.value);
  double rounding = 64 * std::numeric_limits<double>::epsilon() * k;
  double gap = out.grid_min - exact;
  out.agrees = gap >= -rounding && gap <= out.tolerance + rounding;
  return out;
}

Certificate case1_certificate(const WeightVector& w) {
  if (case_of(w) != CaseTag::case1) throw Error(ErrorCode::wrong_case, "wrong case: case 1 needs x1 + x2 > 1");
  Certificate cert;
  cert.tag = CaseTag::case1;
  cert.mode = w.mode();
  cert.n = w.size();
  cert.floor = case1_floor();

  TailMoments tm = tail_moments(w, 2);
  Case1Intermediates in;
  in.m2 = tm.m2;
  in.m4 = tm.m4;
  if (w.exact()) {
    const SqrtSum one(1L);
    SqrtSum x1 = w.value(0).exact_value();
    SqrtSum x2 = w.value(1).exact_value();
    SqrtSum d2 = one + x1 - x2;
    SqrtSum d4 = one + x1 + x2;
    SqrtSum denom2 = d2 * d2;
    SqrtSum sq4 = d4 * d4;
    SqrtSum denom4 = sq4 * sq4;
    SqrtSum term2 = one - tm.m2.exact_value() / denom2;
    SqrtSum term4 = one - tm.m4.exact_value() / denom4;
    cert.final_bound = (term2 + term4) / SqrtSum(4L);
    in.denom2 = denom2;
    in.denom4 = denom4;
    in.term2 = term2;
    in.term4 = term4;
  } else {
    double x1 = w.approx(0);
    double x2 = w.approx(1);
    double d2 = 1.0 + x1 - x2;
    double d4 = 1.0 + x1 + x2;
    double denom2 = d2 * d2;
    double denom4 = (d4 * d4) * (d4 * d4);
    double term2 = 1.0 - tm.m2.float_value() / denom2;
    double term4 = 1.0 - tm.m4.float_value() / denom4;
    cert.final_bound = (term2 + term4) / 4.0;
    in.denom2 = denom2;
    in.denom4 = denom4;
    in.term2 = term2;
    in.term4 = term4;
  }
  cert.floor_ok = compare(cert.final_bound, Scalar(cert.floor)) >= 0;
  cert.term_floors_ok = compare(in.term2, Scalar(Rational(1, 2))) >= 0 && compare(in.term4, Scalar(Rational(61, 64))) >= 0;
  cert.intermediates = std::move(in);
  return cert;
}

Certificate case2_certificate(const WeightVector& w) {
  if (case_of(w) != CaseTag::case2) throw Error(ErrorCode::wrong_case, "wrong case: case 2 needs x1 + x2 <= 1");
  Certificate cert;
  cert.tag = CaseTag::case2;
  cert.mode = w.mode();
  cert.n = w.size();
  cert.floor = case2_floor();

  Case2Intermediates in;
  Scalar best = one_like(w.mode());
  for (std::size_t k = 2; k + 1 <= w.size() && w.size() > 2; ++k) {
    unsigned kk = static_cast<unsigned>(k);
    Case2Row row;
    row.k = kk;
    row.x_next = w.value(k);
    row.g = g(kk, row.x_next);
    row.h = h(kk, row.x_next);
    row.max = max_of(row.g, row.h);
    row.clamped = min_one(row.max);
    if (!in.argmin_k || compare(row.clamped, best) < 0) {
      best = row.clamped;
      in.argmin_k = kk;
    }
    in.per_k.push_back(std::move(row));
  }
  cert.final_bound = best;
  cert.floor_ok = compare(cert.final_bound, Scalar(cert.floor)) >= 0;
  cert.intermediates = std::move(in);
  return cert;
}

void attach_exact_check(Certificate& cert, const WeightVector& w, const EngineOptions& options) {
  Scalar one = one_like(w.mode());
  Rational exact = threshold_probability(w, one, false, options).probability();
  cert.sound = compare(exact, cert.final_bound) >= 0;
  cert.sound_against = std::move(exact);
}

Certificate theorem_bound(const WeightVector& w, ExactCheck check, const EngineOptions& options) {
  Certificate cert = case_of(w) == CaseTag::case1 ? case1_certificate(w) : case2_certificate(w);
  bool run = check == ExactCheck::always || (check == ExactCheck::automatic && w.size() <= options.mitm_limit &&
                                             w.size() <= 63);
  if (run) attach_exact_check(cert, w, options);
  return cert;
}

HybridBound hybrid_bound(const WeightVector& w, const EngineOptions& options) {
  if (case_of(w) != CaseTag::case2) throw Error(ErrorCode::wrong_case, "wrong case: hybrid bound needs x1 + x2 <= 1");
  PartitionReport partition = prefix_partition(w, options);
  Certificate cert = case2_certificate(w);
  const auto& rows = std::get<Case2Intermediates>(cert.intermediates).per_k;
  unsigned n = partition.n;

  HybridBound out;
  out.case2_bound = cert.final_bound;
  out.exact = partition.total_probability();
  if (w.exact()) {
    SqrtSum value = SqrtSum(partition.event(n).probability(n));
    for (const auto& row : rows) value += SqrtSum(partition.event(row.k).probability(n)) * row.clamped.exact_value();
    out.value = value;
  } else {
    // Products of dyadic probabilities and doubles summed exactly, rounded once.
    Rational value = partition.event(n).probability(n);
    for (const auto& row : rows) value += partition.event(row.k).probability(n) * Rational(row.clamped.float_value());
    out.value = to_double(value);
    out.ordered = Rational(cert.final_bound.float_value()) <= value && value <= out.exact;
    return out;
  }
  out.ordered = compare(out.case2_bound, out.value) <= 0 && compare(out.exact, out.value) >= 0;
  return out;
}

std::vector<ConditionalLinkViolation> conditional_link_violations(const WeightVector& w,
                                                                  const PartitionReport& partition) {
  std::vector<ConditionalLinkViolation> out;
  unsigned n = partition.n;
  const Rational slack = w.exact() ? Rational(0) : Rational(1e-12);
  for (const auto& event : partition.events) {
    auto cond = event.conditional();
    if (!cond) continue;
    Scalar bound = one_like(w.mode());
    if (event.k < n) bound = max_of(g(event.k, w.value(event.k)), h(event.k, w.value(event.k)));
    SqrtSum needed = as_sqrt_sum(bound) - SqrtSum(slack);
    if ((SqrtSum(*cond) - needed).sign() < 0) out.push_back({event.k, *cond, bound});
  }
  return out;
}

DecompositionReport decomposition_check(const WeightVector& w, const EngineOptions& options) {
  Certificate cert = case1_certificate(w);
  const auto& in = std::get<Case1Intermediates>(cert.intermediates);
  std::size_t n = w.size();
  WeightsView tail = w.view().subview(std::min<std::size_t>(2, n), n);

  DecompositionReport out;
  Scalar one = one_like(w.mode());
  out.lhs = threshold_probability(w, one, false, options).probability();
  Scalar wide_t, narrow_t;
  if (w.exact()) {
    SqrtSum x1 = w.value(0).exact_value();
    SqrtSum x2 = w.value(1).exact_value();
    wide_t = SqrtSum(1L) + x1 + x2;
    narrow_t = SqrtSum(1L) + x1 - x2;
  } else {
    wide_t = 1.0 + w.approx(0) + w.approx(1);
    narrow_t = 1.0 + w.approx(0) - w.approx(1);
  }
  out.tail_wide = threshold_count(tail, wide_t, false, options).probability();
  out.tail_narrow = threshold_count(tail, narrow_t, false, options).probability();
  out.rhs = (out.tail_wide + out.tail_narrow) / 4;
  out.term2 = in.term2;
  out.term4 = in.term4;
  out.chain_holds = out.lhs >= out.rhs;
  out.second_moment_link = compare(out.tail_narrow, out.term2) >= 0;
  out.fourth_moment_link = compare(out.tail_wide, out.term4) >= 0;
  return out;
}

}  // namespace rsum
