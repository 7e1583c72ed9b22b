#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "rsum/exact_engine.hpp"
#include "rsum/numeric.hpp"
#include "rsum/weights.hpp"

namespace rsum {

/// Universal floors, kept exact.
Rational case1_floor();  // 93/256
Rational case2_floor();  // 9/25 = g_2(1/3)

/// g_k(x) = (1 - (1 - k x^2) / (2 - x)^2) / 2, the conditional bound obtained
/// from M(s_n - s_k)^2 <= 1 - k x_{k+1}^2.
Rational g(unsigned k, const Rational& x);
double g(unsigned k, double x);
Scalar g(unsigned k, const Scalar& x);

/// h_k(x) = (1 - (1 - (1 - x)^2 / k) / (2 - x)^2) / 2, the conditional bound
/// obtained from the Cauchy bound on the prefix mass.
Rational h(unsigned k, const Rational& x);
double h(unsigned k, double x);
Scalar h(unsigned k, const Scalar& x);

/// 1/(k+1), where g_k and h_k cross. Verifies g = h there exactly and throws
/// internal on a mismatch.
Rational crossing_point(unsigned k);

/// min over [0,1] of max(g_k, h_k), attained at the crossing point.
Rational minmax_bound(unsigned k);

struct MinmaxVerification {
  Rational value;          // minmax_bound(k)
  double grid_min = 0.0;   // min of max(g,h) over the grid
  double grid_argmin = 0.0;
  double tolerance = 0.0;  // slope bound times grid spacing
  bool agrees = false;     // 0 <= grid_min - value <= tolerance (up to rounding)
};
MinmaxVerification verify_minmax_bound(unsigned k, std::size_t grid_points);

struct Case1Intermediates {
  Scalar m2, m4;          // tail moments after the two leading weights
  Scalar denom2, denom4;  // (1 + x1 - x2)^2, (1 + x1 + x2)^4
  Scalar term2, term4;    // 1 - m2/denom2, 1 - m4/denom4
};

struct Case2Row {
  unsigned k = 0;
  Scalar x_next;  // x_{k+1}
  Scalar g, h;
  Scalar max;      // max(g, h)
  Scalar clamped;  // min(1, max)
};

struct Case2Intermediates {
  std::vector<Case2Row> per_k;       // k = 2..n-1
  std::optional<unsigned> argmin_k;  // first k attaining the minimum
};

struct Certificate {
  CaseTag tag = CaseTag::case2;
  NumericMode mode = NumericMode::exact;
  std::size_t n = 0;
  std::variant<Case1Intermediates, Case2Intermediates> intermediates;
  Scalar final_bound;
  Rational floor;              // 93/256 or 9/25
  bool floor_ok = false;       // final_bound >= floor
  bool term_floors_ok = true;  // case 1: term2 >= 1/2 and term4 >= 1 - 3/64
  std::optional<Rational> sound_against;  // Pr(|eps^T x| <= 1) when computed
  std::optional<bool> sound;              // final_bound <= sound_against

  /// True when every floor and soundness check that was run holds.
  bool ok() const { return floor_ok && term_floors_ok && sound.value_or(true); }
};

Certificate case1_certificate(const WeightVector& w);
Certificate case2_certificate(const WeightVector& w);

enum class ExactCheck { automatic, always, never };

/// Dispatches on case_of(w). With automatic checking the exact probability is
/// attached whenever n is within the meet-in-the-middle limit.
Certificate theorem_bound(const WeightVector& w, ExactCheck check = ExactCheck::automatic,
                          const EngineOptions& options = {});

/// Attaches the exact probability to an existing certificate.
void attach_exact_check(Certificate& cert, const WeightVector& w, const EngineOptions& options = {});

struct HybridBound {
  Scalar value;        // sum_k Pr(A_k) min(1, max(g, h)) + Pr(A_n)
  Scalar case2_bound;  // case2_certificate(w).final_bound
  Rational exact;      // Pr(|eps^T x| <= 1)
  bool ordered = false;  // case2_bound <= value <= exact
};
HybridBound hybrid_bound(const WeightVector& w, const EngineOptions& options = {});

struct ConditionalLinkViolation {
  unsigned k = 0;
  Rational conditional;
  Scalar bound;
};

/// Every k with Pr(A_k) > 0 whose conditional probability falls below
/// max(g_k(x_{k+1}), h_k(x_{k+1})). Float mode allows 1e-12 slack.
std::vector<ConditionalLinkViolation> conditional_link_violations(const WeightVector& w,
                                                                  const PartitionReport& partition);

struct DecompositionReport {
  Rational lhs;          // Pr(|eps^T x| <= 1)
  Rational tail_wide;    // Pr(|r| <= 1 + x1 + x2), r = sum_{i>=3} eps_i x_i
  Rational tail_narrow;  // Pr(|r| <= 1 + x1 - x2)
  Rational rhs;          // (tail_wide + tail_narrow) / 4
  Scalar term2, term4;
  bool chain_holds = false;          // lhs >= rhs
  bool second_moment_link = false;   // tail_narrow >= term2
  bool fourth_moment_link = false;   // tail_wide >= term4

  bool ok() const { return chain_holds && second_moment_link && fourth_moment_link; }
};
DecompositionReport decomposition_check(const WeightVector& w, const EngineOptions& options = {});

}  // namespace rsum
