#pragma once

#include <cstddef>

#include "rsum/numeric.hpp"
#include "rsum/weights.hpp"

namespace rsum {

/// Second and fourth moments of the tail sum s_n - s_k = sum_{i>k} eps_i x_i.
struct TailMoments {
  std::size_t k = 0;
  Scalar m2;  // sum_{i>k} x_i^2
  Scalar m4;  // sum_{i>k} x_i^4 + 6 sum_{k<i<j} x_i^2 x_j^2
};

/// O(n) via m4 = 3 m2^2 - 2 sum_{i>k} x_i^4. Exact mode yields rationals.
/// Throws out_of_range unless 0 <= k <= n.
TailMoments tail_moments(const WeightVector& w, std::size_t k);

}  // namespace rsum
