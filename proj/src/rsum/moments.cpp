#include "rsum/moments.hpp"

#include <string>

namespace rsum {

TailMoments tail_moments(const WeightVector& w, std::size_t k) {
  if (k > w.size()) {
    throw Error(ErrorCode::out_of_range,
                "prefix length k = " + std::to_string(k) + " outside [0, " + std::to_string(w.size()) + "]");
  }
  if (w.exact()) {
    Rational m2 = 0, fourth = 0;
    for (std::size_t i = k; i < w.size(); ++i) {
      const Rational& q = w.squares()[i];
      m2 += q;
      fourth += q * q;
    }
    Rational m4 = 3 * m2 * m2 - 2 * fourth;
    return {k, SqrtSum(m2), SqrtSum(m4)};
  }
  double m2 = 0.0, fourth = 0.0;
  for (std::size_t i = k; i < w.size(); ++i) {
    double q = w.approx(i) * w.approx(i);
    m2 += q;
    fourth += q * q;
  }
  return {k, m2, 3.0 * m2 * m2 - 2.0 * fourth};
}

}  // namespace rsum
