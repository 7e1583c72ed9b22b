#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rsum/numeric.hpp"
#include "rsum/weights.hpp"

namespace rsum {

struct EngineOptions {
  unsigned full_limit = 24;  // plain 2^n enumeration (distribution, partition)
  unsigned mitm_limit = 40;  // meet-in-the-middle threshold queries
  unsigned threads = 0;      // 0: RSUM_THREADS from the environment, else 1
};

/// Worker count from RSUM_THREADS, defaulting to 1.
unsigned default_thread_count();

/// One sign pattern; bit i set <=> epsilon_i = +1.
struct SignPattern {
  std::uint64_t bits = 0;
  unsigned n = 0;

  int sign(unsigned i) const { return ((bits >> i) & 1u) ? 1 : -1; }
};

struct ThresholdResult {
  std::uint64_t count = 0;  // admitted sign patterns out of 2^n
  unsigned n = 0;
  // Float mode only: patterns whose |sum| lies within 1e-12 of t, i.e. whose
  // classification is sensitive to rounding.
  std::uint64_t near_boundary = 0;

  Rational probability() const;
};

/// Pr(|eps^T x| <= t), or < t when strict, by meet-in-the-middle enumeration.
ThresholdResult threshold_probability(const WeightVector& w, const Scalar& t, bool strict = false,
                                      const EngineOptions& options = {});

/// Same count for an arbitrary nonnegative weight list (no unit-norm
/// requirement); the tails of a vector go through here.
ThresholdResult threshold_count(const WeightsView& weights, const Scalar& t, bool strict,
                                const EngineOptions& options = {});

/// Full distribution of eps^T x, values strictly increasing.
class SumDistribution {
 public:
  struct Entry {
    double approx;            // exact value in float mode, an approximation otherwise
    SignPattern representative;
    std::uint64_t count;
  };

  SumDistribution(std::shared_ptr<const WeightVector> weights, std::vector<Entry> entries);

  unsigned n() const { return static_cast<unsigned>(weights_->size()); }
  const std::vector<Entry>& entries() const { return entries_; }
  /// Value of entry i (exact in exact mode).
  Scalar value(std::size_t i) const;

  /// Pr(|eps^T x| <= t) (or < t) summed from the entries.
  Rational probability_within(const Scalar& t, bool strict) const;

 private:
  std::shared_ptr<const WeightVector> weights_;
  std::vector<Entry> entries_;
};

SumDistribution sum_distribution(const WeightVector& w, const EngineOptions& options = {});

struct PartitionEvent {
  unsigned k = 0;
  std::uint64_t count = 0;  // sign patterns in A_k
  std::uint64_t joint = 0;  // of which |s_n| <= 1

  Rational probability(unsigned n) const;
  Rational joint_probability(unsigned n) const;
  std::optional<Rational> conditional() const;  // undefined when Pr(A_k) = 0
};

struct PartitionReport {
  unsigned n = 0;
  std::vector<PartitionEvent> events;  // k = 2..n in order
  std::uint64_t near_boundary = 0;     // float mode: comparisons within 1e-12 of a boundary

  std::uint64_t total_joint() const;
  Rational total_probability() const;  // Pr(|s_n| <= 1)
  const PartitionEvent& event(unsigned k) const { return events.at(k - 2); }
};

/// Assigns every sign sequence to the first k in 2..n-1 with
/// |s_j| <= 1 - x_{j+1} for j < k and |s_k| > 1 - x_{k+1}, else to A_n.
/// Requires x_1 + x_2 <= 1 and n >= 2.
PartitionReport prefix_partition(const WeightVector& w, const EngineOptions& options = {});

/// Float mode: min over sign patterns of | |eps^T x| - t |, using the same
/// rounding as threshold_probability.
double boundary_margin(const WeightVector& w, double t, const EngineOptions& options = {});

}  // namespace rsum
