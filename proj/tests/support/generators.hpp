#pragma once

// Random weight vectors for property tests. All draws come from a seeded
// std::mt19937_64 so failures reproduce.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rsum/weights.hpp"

namespace rsum::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [lo, hi].
  long integer(long lo, long hi) {
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Rational unit vector by inverse stereographic projection of the rational
/// point b/M:  x = (2 b M, |b|^2 - M^2) / (|b|^2 + M^2).
/// Choosing M near |b| keeps the last coordinate small so both cases occur.
inline WeightVector rational_unit_vector(Gen& gen, std::size_t n) {
  std::vector<long> b(n - 1);
  bool spiky = gen.integer(0, 2) == 0;
  long range = gen.integer(1, 12);
  for (auto& v : b) v = gen.integer(0, spiky ? 2 : range);
  if (spiky && n >= 3) {
    b[0] = gen.integer(10, 40);
    b[1] = gen.integer(5, 40);
  }
  long norm2 = 0;
  for (long v : b) norm2 += v * v;
  long root = static_cast<long>(std::llround(std::sqrt(static_cast<double>(norm2))));
  long m = std::max(1L, root + gen.integer(-2, 2));
  if (gen.integer(0, 5) == 0) m = gen.integer(1, 3 * root + 3);
  Integer denom = norm2 + m * m;
  std::vector<Rational> x;
  for (long v : b) x.emplace_back(Integer(2 * v * m), denom);
  x.emplace_back(Integer(norm2 - m * m), denom);
  for (auto& q : x) q.canonicalize();
  return WeightVector::from_rationals(x);
}

/// Exact vector with irrational weights: x_i = sqrt(r_i / sum r).
inline WeightVector radical_unit_vector(Gen& gen, std::size_t n) {
  std::vector<Rational> squares;
  long top = gen.integer(1, 30);
  for (std::size_t i = 0; i < n; ++i) squares.emplace_back(gen.integer(0, top));
  if (std::all_of(squares.begin(), squares.end(), [](const Rational& q) { return q == 0; })) squares[0] = 1;
  if (gen.integer(0, 2) == 0 && n >= 2) {
    squares[0] = gen.integer(20 * top, 60 * top);
    squares[1] = gen.integer(10 * top, 50 * top);
  }
  return WeightVector::from_squares(squares);
}

/// Float vector with uniform (0,1] entries, a few zeros and repeats.
inline WeightVector float_unit_vector(Gen& gen, std::size_t n) {
  std::vector<double> raw(n);
  for (auto& v : raw) v = gen.uniform() + 1e-3;
  if (n >= 3 && gen.coin()) raw[n - 1] = raw[0];
  if (gen.coin()) raw[0] *= 4.0;
  return WeightVector::canonicalize(raw, NumericMode::floating);
}

/// Exact vector, rational or radical, with 1 <= n <= max_n.
inline WeightVector exact_unit_vector(Gen& gen, std::size_t max_n) {
  std::size_t n = static_cast<std::size_t>(gen.integer(1, static_cast<long>(max_n)));
  return gen.integer(0, 2) == 0 ? radical_unit_vector(gen, n) : rational_unit_vector(gen, n);
}

/// Rejection-samples a vector in the requested case with n in [min_n, max_n].
template <class Make>
WeightVector vector_in_case(Gen& gen, CaseTag tag, std::size_t min_n, std::size_t max_n, Make make) {
  for (;;) {
    auto n = static_cast<std::size_t>(gen.integer(static_cast<long>(min_n), static_cast<long>(max_n)));
    WeightVector w = make(gen, n);
    if (case_of(w) == tag) return w;
  }
}

}  // namespace rsum::testing
