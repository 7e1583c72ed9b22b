#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsum/error.hpp"

namespace rsum {

using Integer = mpz_class;
using Rational = mpq_class;

// m = root^2 * radicand, radicand squarefree. Factors by trial division and
// certifies the leftover cofactor; throws invalid_input if it cannot.
struct SquareSplit {
  Integer root;
  Integer radicand;
};
SquareSplit split_square(const Integer& m);

// Accepts "7", "-3/4", "0.125", "1.5e-3".
Rational parse_rational(std::string_view text);

// 2^n as an exact rational.
Rational power_of_two(unsigned n);

// Shortest decimal string that round-trips to v.
std::string format_double(double v);

// Correctly rounded double nearest to q.
double to_double(const Rational& q);

/// Exact element of a multiquadratic field: a finite sum c_1*sqrt(r_1) + ...
/// with rational c_i and distinct squarefree positive integers r_i.
///
/// The representation is canonical (square roots of distinct squarefree
/// integers are linearly independent over Q), so equality is structural and
/// the sign of any nonzero element is decided by interval evaluation at
/// increasing precision.
class SqrtSum {
 public:
  SqrtSum() = default;
  SqrtSum(long value);  // NOLINT(google-explicit-constructor)
  SqrtSum(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// sqrt(q) for q >= 0.
  static SqrtSum sqrt_of(const Rational& q);

  /// coefficient * sqrt(radicand); radicand must already be squarefree.
  static SqrtSum term(const Rational& coefficient, const Integer& radicand);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  /// Rational value; throws domain_error if an irrational part is present.
  Rational rational() const;

  int sign() const;
  double to_double() const;
  std::string str() const;

  SqrtSum inverse() const;
  /// Multiplies by -1 every term whose radicand is divisible by `prime_like`.
  SqrtSum conjugate(const Integer& prime_like) const;

  const std::map<Integer, Rational>& terms() const { return terms_; }

  SqrtSum& operator+=(const SqrtSum& other);
  SqrtSum& operator-=(const SqrtSum& other);
  SqrtSum& operator*=(const SqrtSum& other);
  SqrtSum& operator/=(const SqrtSum& other);

  friend SqrtSum operator+(SqrtSum a, const SqrtSum& b) { return a += b; }
  friend SqrtSum operator-(SqrtSum a, const SqrtSum& b) { return a -= b; }
  friend SqrtSum operator*(SqrtSum a, const SqrtSum& b) { return a *= b; }
  friend SqrtSum operator/(SqrtSum a, const SqrtSum& b) { return a /= b; }
  SqrtSum operator-() const;

  friend bool operator==(const SqrtSum& a, const SqrtSum& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SqrtSum& a, const SqrtSum& b) { return !(a == b); }
  friend bool operator<(const SqrtSum& a, const SqrtSum& b) { return compare(a, b) < 0; }
  friend bool operator>(const SqrtSum& a, const SqrtSum& b) { return compare(a, b) > 0; }
  friend bool operator<=(const SqrtSum& a, const SqrtSum& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const SqrtSum& a, const SqrtSum& b) { return compare(a, b) >= 0; }

  static int compare(const SqrtSum& a, const SqrtSum& b);

 private:
  void add_term(const Integer& radicand, const Rational& coefficient);

  std::map<Integer, Rational> terms_;
};

/// A number in one of the two numeric modes: IEEE double or exact SqrtSum.
class Scalar {
 public:
  Scalar() : value_(0.0) {}
  Scalar(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(SqrtSum v) : value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& v) : value_(SqrtSum(v)) {}  // NOLINT(google-explicit-constructor)

  bool exact() const { return std::holds_alternative<SqrtSum>(value_); }
  const SqrtSum& exact_value() const;
  double float_value() const;

  double to_double() const;
  std::string decimal_string() const { return format_double(to_double()); }
  std::optional<std::string> exact_string() const;

 private:
  std::variant<double, SqrtSum> value_;
};

/// Three-way comparison. Exact when both sides are exact; a float side is
/// taken at its exact binary value.
int compare(const Scalar& a, const Scalar& b);
int compare(const Rational& a, const Scalar& b);

}  // namespace rsum
