#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rsum/exact_engine.hpp"
#include "rsum/numeric.hpp"
#include "rsum/weights.hpp"

namespace rsum {

/// Deterministic generator shared by every randomized routine: std::mt19937_64
/// seeded with the 64-bit seed. Uniform doubles take the top 53 bits of one
/// word, (w >> 11) * 2^-53, shifted into (0, 1] when asked.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_open_closed() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct EstimateCI {
  double estimate = 0.0;
  double lower = 0.0;  // Wilson score interval
  double upper = 0.0;
  double half_width = 0.0;
  double confidence = 0.99;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
  std::uint64_t seed = 0;
};

/// Wilson score interval for `hits` successes out of `samples`.
EstimateCI wilson_interval(std::uint64_t hits, std::uint64_t samples, double confidence);

/// Estimates Pr(|eps^T x| <= t). Sample j uses ceil(n/64) consecutive words;
/// bit i % 64 of word i / 64 set means eps_i = +1. Exact mode decides each
/// sample exactly.
EstimateCI monte_carlo(const WeightVector& w, const Scalar& t, std::uint64_t samples, std::uint64_t seed,
                       double confidence = 0.99);

struct LemmaRow {
  unsigned k = 0;
  Rational crossing_x;
  Rational g_at_crossing;
  Rational h_at_crossing;
  Rational minmax;
  bool monotone_g_ok = true;       // g_k nondecreasing on the grid over [1/(2k), 1]
  bool monotone_h_ok = true;       // h_k nonincreasing on the grid over [0, 1]
  bool crossing_ok = true;         // g_k = h_k exactly at 1/(k+1)
  bool argmin_ok = true;           // grid argmin of max(g_k, h_k) within one cell of 1/(k+1)
  bool minmax_monotone_ok = true;  // minmax(k) >= minmax(k-1) and >= minmax(2)

  bool ok() const { return monotone_g_ok && monotone_h_ok && crossing_ok && argmin_ok && minmax_monotone_ok; }
};

struct LemmaViolation {
  unsigned k = 0;
  std::string check;  // monotone_g, monotone_h, crossing, argmin, minmax_monotone
  Rational x;         // where it was detected
  std::string detail;
};

struct LemmaSweep {
  unsigned k_max = 0;
  std::size_t grid_points = 0;
  std::vector<LemmaRow> rows;
  std::vector<LemmaViolation> violations;

  bool ok() const { return violations.empty(); }
  /// Row with the smallest minmax value (first one on ties).
  const LemmaRow& minimum() const;
};

/// Integer type for the grid comparisons. automatic uses 128-bit integers when
/// the products provably fit and GMP otherwise.
enum class LemmaArithmetic { automatic, bignum };

/// For k = 2..k_max checks the monotonicity, crossing and min-max claims on
/// exact rational grids. Every comparison is an integer cross-multiplication.
LemmaSweep lemma_sweep(unsigned k_max, std::size_t grid_points,
                       LemmaArithmetic arithmetic = LemmaArithmetic::automatic);

struct SearchStep {
  std::uint64_t evaluation = 0;
  Rational probability;
};

struct SearchResult {
  WeightVector best_w;
  Rational best_prob;
  double best_margin = 0.0;  // distance of the closest |eps^T x| to 1
  std::vector<SearchStep> trajectory;  // every improvement of the incumbent
  std::uint64_t budget_used = 0;
  std::uint64_t restarts = 0;
  bool counterexample_candidate = false;  // best_prob < 9/25
};

struct SearchOptions {
  double initial_step = 0.25;
  double min_step = 1e-6;
};

/// Random-restart pattern search on the unit sphere for small
/// Pr(|eps^T x| <= 1), evaluated exactly in float mode. Among equal
/// probabilities, larger boundary margin wins. Each objective evaluation costs
/// one unit of budget.
SearchResult minimize_probability(unsigned n, std::uint64_t budget, std::uint64_t seed,
                                  const EngineOptions& engine = {}, const SearchOptions& search = {});

}  // namespace rsum
