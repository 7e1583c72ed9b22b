#pragma once

// Numeric back ends for the enumeration algorithms. Each domain fixes a
// threshold t and answers, exactly for its number model:
//   upper(a, b): a + b <= t   (a + b < t when strict)
//   below(a, b): a + b < -t   (a + b <= -t when strict)
// where a covers a prefix of the weights and b the complementary suffix.
// Both predicates are monotone in b, which the two-pointer sweeps rely on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "rsum/numeric.hpp"
#include "rsum/weights.hpp"

namespace rsum::detail {

constexpr std::int64_t kCoefficientLimit = std::int64_t{1} << 62;
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;

template <class Value, class Extend>
std::vector<Value> signed_sums(std::size_t begin, std::size_t end, Value zero, Extend extend) {
  std::size_t count = std::size_t{1} << (end - begin);
  std::vector<Value> sums(count, zero);
  // After step j, sums[m] for m < 2^(j+1) is the left-to-right sum over
  // indices begin..begin+j with bit i of m selecting +x.
  for (std::size_t j = 0; j < end - begin; ++j) {
    std::size_t bit = std::size_t{1} << j;
    for (std::size_t m = bit; m-- > 0;) {
      sums[m | bit] = extend(sums[m], begin + j, true);
      sums[m] = extend(sums[m], begin + j, false);
    }
  }
  return sums;
}

/// Exact weights rewritten over a common denominator:
///   x_i = coefficient_i * sqrt(radicand_{radix_i}) / scale
/// with 63-bit integer coefficients.
class Lattice {
 public:
  explicit Lattice(std::span<const SqrtSum> weights) {
    Integer scale = 1;
    std::vector<std::pair<Rational, Integer>> parts;
    parts.reserve(weights.size());
    for (const auto& w : weights) {
      if (w.is_zero()) {
        parts.emplace_back(Rational(0), Integer(1));
        continue;
      }
      if (w.terms().size() != 1) throw Error(ErrorCode::internal, "lattice weight is not a single radical");
      const auto& [radicand, coefficient] = *w.terms().begin();
      if (sgn(coefficient) < 0) throw Error(ErrorCode::internal, "lattice weight is negative");
      parts.emplace_back(coefficient, radicand);
      scale = lcm(scale, coefficient.get_den());
    }
    if (scale >= kCoefficientLimit) throw too_wide();
    scale_ = scale.get_si();

    Integer total = 0;
    for (const auto& [coefficient, radicand] : parts) {
      Integer a = coefficient.get_num() * (scale / coefficient.get_den());
      total += a;
      if (total >= kCoefficientLimit) throw too_wide();
      coefficients_.push_back(a.get_si());
      auto it = std::find(basis_.begin(), basis_.end(), radicand);
      radix_.push_back(static_cast<std::size_t>(it - basis_.begin()));
      if (it == basis_.end()) basis_.push_back(radicand);
    }
    total_ = total.get_si();
    rational_ = std::all_of(basis_.begin(), basis_.end(), [](const Integer& r) { return r == 1; });
  }

  std::size_t size() const { return coefficients_.size(); }
  bool rational() const { return rational_; }
  std::int64_t scale() const { return scale_; }
  std::int64_t total() const { return total_; }
  std::int64_t coefficient(std::size_t i) const { return coefficients_[i]; }
  std::size_t basis_size() const { return basis_.size(); }

  /// Coefficients of sum_{i in [begin,end)} (bit i of mask ? +1 : -1) x_i.
  void accumulate(std::vector<std::int64_t>& coeffs, std::uint64_t mask, std::size_t begin,
                  std::size_t end) const {
    coeffs.assign(basis_.size(), 0);
    for (std::size_t i = begin; i < end; ++i) {
      coeffs[radix_[i]] += ((mask >> i) & 1u) ? coefficients_[i] : -coefficients_[i];
    }
  }

  SqrtSum value(const std::vector<std::int64_t>& coeffs) const {
    SqrtSum out;
    for (std::size_t r = 0; r < basis_.size(); ++r) {
      if (coeffs[r] != 0) {
        out += SqrtSum::term(Rational(Integer(static_cast<long>(coeffs[r])), Integer(static_cast<long>(scale_))),
                             basis_[r]);
      }
    }
    return out;
  }

 private:
  static Error too_wide() {
    return Error(ErrorCode::instance_too_large,
                 "instance too large: exact-mode weights need more than 62-bit integer coefficients "
                 "over a common denominator; use float mode");
  }

  std::vector<std::int64_t> coefficients_;
  std::vector<std::size_t> radix_;
  std::vector<Integer> basis_;
  std::int64_t scale_ = 1;
  std::int64_t total_ = 0;
  bool rational_ = true;
};

/// Rational weights: sums are integers in units of 1/scale and the window
/// collapses to an integer bound.
class IntegerDomain {
 public:
  using Value = std::int64_t;

  IntegerDomain(const Lattice& lattice, const Rational& t, bool strict) : lattice_(lattice) {
    Rational scaled = t * Rational(Integer(static_cast<long>(lattice.scale())));
    Integer bound;
    if (strict) {
      mpz_cdiv_q(bound.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
      bound -= 1;
    } else {
      mpz_fdiv_q(bound.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    }
    Integer cap = lattice.total() + 1;
    bound_ = (bound > cap ? cap : bound).get_si();
  }

  std::size_t size() const { return lattice_.size(); }
  Value zero() const { return 0; }
  Value extend(Value v, std::size_t i, bool plus) const {
    return plus ? v + lattice_.coefficient(i) : v - lattice_.coefficient(i);
  }
  std::vector<Value> half(std::size_t begin, std::size_t end) const {
    return signed_sums<Value>(begin, end, 0, [this](Value v, std::size_t i, bool p) { return extend(v, i, p); });
  }
  Value combine(Value a, Value b) const { return a + b; }
  bool less(Value a, Value b, std::size_t, std::size_t) const { return a < b; }
  bool equal(Value a, Value b, std::size_t, std::size_t) const { return a == b; }
  bool upper(Value a, Value b) const { return a + b <= bound_; }
  bool below(Value a, Value b) const { return a + b < -bound_; }

  // |s| + x_next > 1, for the partition events (threshold-independent).
  bool event(Value s, std::size_t next) const {
    return (s < 0 ? -s : s) + lattice_.coefficient(next) > lattice_.scale();
  }
  bool near_event(Value, std::size_t) const { return false; }

  SqrtSum exact(Value v) const {
    return SqrtSum(Rational(Integer(static_cast<long>(v)), Integer(static_cast<long>(lattice_.scale()))));
  }

 private:
  const Lattice& lattice_;
  std::int64_t bound_ = 0;
};

/// IEEE doubles, compared without tolerance. A pattern's sum is the
/// left-to-right sum of its prefix part plus the left-to-right sum of its
/// suffix part, rounded once more.
class FloatDomain {
 public:
  using Value = double;
  static constexpr double kTieWindow = 1e-12;

  FloatDomain(std::span<const double> x, double t, bool strict) : x_(x), t_(t), strict_(strict) {}

  std::size_t size() const { return x_.size(); }
  Value zero() const { return 0.0; }
  Value extend(Value v, std::size_t i, bool plus) const { return plus ? v + x_[i] : v - x_[i]; }
  std::vector<Value> half(std::size_t begin, std::size_t end) const {
    return signed_sums<Value>(begin, end, 0.0, [this](Value v, std::size_t i, bool p) { return extend(v, i, p); });
  }
  Value combine(Value a, Value b) const { return a + b; }
  bool less(Value a, Value b, std::size_t, std::size_t) const { return a < b; }
  bool equal(Value a, Value b, std::size_t, std::size_t) const { return a == b; }
  bool upper(Value a, Value b) const { return strict_ ? a + b < t_ : a + b <= t_; }
  bool below(Value a, Value b) const { return strict_ ? a + b <= -t_ : a + b < -t_; }

  bool event(Value s, std::size_t next) const { return std::fabs(s) + x_[next] > 1.0; }
  bool near_event(Value s, std::size_t next) const {
    return std::fabs(std::fabs(s) + x_[next] - 1.0) <= kTieWindow;
  }
  bool near_window(Value s) const { return std::fabs(std::fabs(s) - t_) <= kTieWindow; }

 private:
  std::span<const double> x_;
  double t_;
  bool strict_;
};

/// Irrational exact weights: doubles with a rigorous error bound decide most
/// comparisons; the rest fall back to integer coefficient vectors and exact
/// sign determination.
class RadicalDomain {
 public:
  struct Value {
    double approx;
    std::uint64_t mask;  // bit i set <=> epsilon_i = +1, global indices
  };

  RadicalDomain(const Lattice& lattice, std::span<const double> x, SqrtSum t, bool strict)
      : lattice_(lattice), x_(x), t_(std::move(t)), strict_(strict) {
    t_approx_ = t_.to_double();
    double total = 0.0;
    for (double v : x_) total += v;
    margin_ = (2.0 * static_cast<double>(x_.size()) + 16.0) * kUnitRoundoff * (total + std::fabs(t_approx_) + 1.0) +
              1e-300;
  }

  std::size_t size() const { return x_.size(); }
  Value zero() const { return {0.0, 0}; }
  Value extend(Value v, std::size_t i, bool plus) const {
    return plus ? Value{v.approx + x_[i], v.mask | (std::uint64_t{1} << i)} : Value{v.approx - x_[i], v.mask};
  }
  std::vector<Value> half(std::size_t begin, std::size_t end) const {
    return signed_sums<Value>(begin, end, zero(), [this](Value v, std::size_t i, bool p) { return extend(v, i, p); });
  }
  Value combine(Value a, Value b) const { return {a.approx + b.approx, a.mask | b.mask}; }

  bool less(const Value& a, const Value& b, std::size_t begin, std::size_t end) const {
    double d = a.approx - b.approx;
    if (d < -margin_) return true;
    if (d > margin_) return false;
    return difference_sign(a.mask, b.mask, begin, end) < 0;
  }
  bool equal(const Value& a, const Value& b, std::size_t begin, std::size_t end) const {
    if (std::fabs(a.approx - b.approx) > margin_) return false;
    return difference_sign(a.mask, b.mask, begin, end) == 0;
  }

  bool upper(const Value& a, const Value& b) const {
    int s = sign_against(a.approx + b.approx, a.mask | b.mask, 0, x_.size(), t_approx_, t_);
    return strict_ ? s < 0 : s <= 0;
  }
  bool below(const Value& a, const Value& b) const {
    int s = sign_against(a.approx + b.approx, a.mask | b.mask, 0, x_.size(), -t_approx_, -t_);
    return strict_ ? s <= 0 : s < 0;
  }

  bool event(const Value& s, std::size_t next) const {
    std::uint64_t next_bit = std::uint64_t{1} << next;
    std::uint64_t flipped = (s.mask ^ (next_bit - 1)) | next_bit;
    static const SqrtSum one(1L);
    return sign_against(s.approx + x_[next], s.mask | next_bit, 0, next + 1, 1.0, one) > 0 ||
           sign_against(-s.approx + x_[next], flipped, 0, next + 1, 1.0, one) > 0;
  }
  bool near_event(const Value&, std::size_t) const { return false; }

  SqrtSum exact(const Value& v, std::size_t end) const {
    std::vector<std::int64_t> coeffs;
    lattice_.accumulate(coeffs, v.mask, 0, end);
    return lattice_.value(coeffs);
  }

 private:
  int difference_sign(std::uint64_t a, std::uint64_t b, std::size_t begin, std::size_t end) const {
    std::vector<std::int64_t> ca, cb;
    lattice_.accumulate(ca, a, begin, end);
    lattice_.accumulate(cb, b, begin, end);
    if (ca == cb) return 0;
    for (std::size_t r = 0; r < ca.size(); ++r) ca[r] -= cb[r];
    return lattice_.value(ca).sign();
  }

  // sign(sum over [begin,end) selected by mask - target)
  int sign_against(double approx, std::uint64_t mask, std::size_t begin, std::size_t end, double target_approx,
                   const SqrtSum& target) const {
    double d = approx - target_approx;
    if (d > margin_) return 1;
    if (d < -margin_) return -1;
    std::vector<std::int64_t> coeffs;
    lattice_.accumulate(coeffs, mask, begin, end);
    return (lattice_.value(coeffs) - target).sign();
  }

  const Lattice& lattice_;
  std::span<const double> x_;
  SqrtSum t_;
  bool strict_;
  double t_approx_ = 0.0;
  double margin_ = 0.0;
};

}  // namespace rsum::detail
