#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rsum/numeric.hpp"

namespace rsum {

enum class NumericMode { exact, floating };
enum class CaseTag { case1, case2 };

std::string to_string(NumericMode mode);
std::string to_string(CaseTag tag);

/// Read-only view over a list of nonnegative weights in one numeric mode.
/// Unlike WeightVector it carries no unit-norm invariant (tails, prefixes).
struct WeightsView {
  NumericMode mode = NumericMode::floating;
  std::span<const double> approx;
  std::span<const SqrtSum> exact;  // empty in floating mode

  std::size_t size() const { return approx.size(); }
  bool is_exact() const { return mode == NumericMode::exact; }
  WeightsView subview(std::size_t begin, std::size_t end) const;
};

/// Canonical weight vector: nonnegative, sorted descending, unit L2 norm.
///
/// Exact mode stores each weight as sqrt of a rational square, so the squares
/// sum to exactly one. Float mode stores doubles normalized to within a few
/// ulps of unit norm; a vector that is already unit to that accuracy is left
/// untouched, which makes canonicalization idempotent.
class WeightVector {
 public:
  static WeightVector canonicalize(std::span<const double> raw, NumericMode mode);
  static WeightVector from_rationals(std::span<const Rational> raw);
  static WeightVector from_squares(std::span<const Rational> squares);

  /// Grammar: "0.8,0.6" (float mode) or "sq:16/25,9/25" (exact mode, each
  /// token is x_i^2, normalized by the total). `mode` overrides the default
  /// mode of the chosen form.
  static WeightVector parse(std::string_view text, std::optional<NumericMode> mode = std::nullopt);

  NumericMode mode() const { return mode_; }
  bool exact() const { return mode_ == NumericMode::exact; }
  std::size_t size() const { return approx_.size(); }

  /// x_i, 0-based. Indices past the end read as zero.
  Scalar value(std::size_t i) const;
  double approx(std::size_t i) const { return i < approx_.size() ? approx_[i] : 0.0; }
  std::span<const double> approx() const { return approx_; }
  std::span<const SqrtSum> exact_values() const { return exact_; }
  std::span<const Rational> squares() const { return squares_; }

  WeightsView view() const { return {mode_, approx_, exact_}; }

  /// Serialized form in the input grammar; parse(str()) == *this.
  std::string str() const;

  friend bool operator==(const WeightVector& a, const WeightVector& b);

 private:
  WeightVector() = default;

  NumericMode mode_ = NumericMode::floating;
  std::vector<double> approx_;
  std::vector<SqrtSum> exact_;
  std::vector<Rational> squares_;
};

CaseTag case_of(const WeightVector& w);

}  // namespace rsum
