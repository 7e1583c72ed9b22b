#include "rsum/numeric.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace rsum {

namespace {

constexpr unsigned long kTrialDivisionLimit = 1ul << 20;

class MpfrNumber {
 public:
  explicit MpfrNumber(mpfr_prec_t prec) { mpfr_init2(value_, prec); mpfr_set_zero(value_, 1); }
  ~MpfrNumber() { mpfr_clear(value_); }
  MpfrNumber(const MpfrNumber&) = delete;
  MpfrNumber& operator=(const MpfrNumber&) = delete;

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

 private:
  mpfr_t value_;
};

// Outward-rounded enclosure [lo, hi] of the sum at the given precision.
void enclose(const std::map<Integer, Rational>& terms, mpfr_prec_t prec,
             MpfrNumber& lo, MpfrNumber& hi) {
  MpfrNumber root_lo(prec), root_hi(prec), term_lo(prec), term_hi(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  for (const auto& [radicand, coefficient] : terms) {
    mpfr_set_z(root_lo.get(), radicand.get_mpz_t(), MPFR_RNDD);
    mpfr_sqrt(root_lo.get(), root_lo.get(), MPFR_RNDD);
    mpfr_set_z(root_hi.get(), radicand.get_mpz_t(), MPFR_RNDU);
    mpfr_sqrt(root_hi.get(), root_hi.get(), MPFR_RNDU);
    if (sgn(coefficient) > 0) {
      mpfr_mul_q(term_lo.get(), root_lo.get(), coefficient.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(term_hi.get(), root_hi.get(), coefficient.get_mpq_t(), MPFR_RNDU);
    } else {
      mpfr_mul_q(term_lo.get(), root_hi.get(), coefficient.get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(term_hi.get(), root_lo.get(), coefficient.get_mpq_t(), MPFR_RNDU);
    }
    mpfr_add(lo.get(), lo.get(), term_lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), term_hi.get(), MPFR_RNDU);
  }
}

std::vector<Integer> coprime_basis(const std::vector<Integer>& values) {
  std::vector<Integer> basis;
  auto insert = [&basis](auto&& self, Integer y) -> void {
    if (y == 1) return;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Integer g = gcd(basis[i], y);
      if (g > 1) {
        Integer e = basis[i];
        basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
        self(self, Integer(e / g));
        self(self, g);
        self(self, Integer(y / g));
        return;
      }
    }
    basis.push_back(std::move(y));
  };
  for (const auto& v : values) insert(insert, v);
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace

SquareSplit split_square(const Integer& m) {
  if (sgn(m) < 0) throw Error(ErrorCode::invalid_input, "square split of a negative integer");
  if (sgn(m) == 0) return {Integer(0), Integer(1)};
  if (mpz_perfect_square_p(m.get_mpz_t())) return {sqrt(m), Integer(1)};

  Integer root = 1, radicand = 1, rest = m;
  unsigned long f = 2;
  for (; f <= kTrialDivisionLimit; f += (f == 2 ? 1 : 2)) {
    Integer cube = Integer(f) * f * f;
    if (cube > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), f) == 0) continue;
    unsigned exponent = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), f) != 0) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), f);
      ++exponent;
    }
    for (unsigned e = 0; e + 1 < exponent; e += 2) root *= f;
    if (exponent % 2 == 1) radicand *= f;
    if (mpz_perfect_square_p(rest.get_mpz_t())) break;
  }
  if (rest == 1) return {root, radicand};
  if (mpz_perfect_square_p(rest.get_mpz_t())) return {root * sqrt(rest), radicand};
  // Every prime factor of rest is >= f; if f^3 > rest there are at most two
  // of them and they are distinct (rest is not a square).
  if (Integer(f) * f * f > rest) return {root, radicand * rest};
  throw Error(ErrorCode::invalid_input,
              "cannot certify squarefree part of " + m.get_str() + " (too large to factor)");
}

Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw Error(ErrorCode::invalid_input, "malformed number '" + std::string(text) + "'");
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (sgn(den) == 0) throw Error(ErrorCode::invalid_input, "zero denominator in '" + std::string(text) + "'");
    Rational q = num / den;
    q.canonicalize();
    return q;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool any_digit = false;
  for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
    digits += text[pos];
    any_digit = true;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
      digits += text[pos];
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    long exponent = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos + (pos < text.size() && text[pos] == '+' ? 1 : 0),
                                     text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr != text.data() + text.size()) return fail();
    if (exponent > 100000 || exponent < -100000) return fail();
    scale += exponent;
    pos = text.size();
  }
  if (pos != text.size()) return fail();

  Integer mantissa(digits, 10);
  Integer ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale >= 0 ? Rational(mantissa * ten_power) : Rational(mantissa, ten_power);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational power_of_two(unsigned n) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, n);
  return Rational(p);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

double to_double(const Rational& q) {
  MpfrNumber x(53);
  mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_d(x.get(), MPFR_RNDN);
}

SqrtSum::SqrtSum(long value) : SqrtSum(Rational(value)) {}

SqrtSum::SqrtSum(const Rational& value) {
  if (sgn(value) != 0) terms_.emplace(Integer(1), value);
}

SqrtSum SqrtSum::sqrt_of(const Rational& q) {
  if (sgn(q) < 0) throw Error(ErrorCode::domain_error, "square root of negative rational " + q.get_str());
  if (sgn(q) == 0) return {};
  SquareSplit num = split_square(q.get_num());
  SquareSplit den = split_square(q.get_den());
  // sqrt(p/d) = s_p sqrt(r_p) / (s_d sqrt(r_d)) = s_p sqrt(r_p r_d) / (s_d r_d)
  Rational coefficient(num.root, den.root * den.radicand);
  coefficient.canonicalize();
  return term(coefficient, num.radicand * den.radicand);
}

SqrtSum SqrtSum::term(const Rational& coefficient, const Integer& radicand) {
  SqrtSum out;
  out.add_term(radicand, coefficient);
  return out;
}

bool SqrtSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational SqrtSum::rational() const {
  if (!is_rational()) throw Error(ErrorCode::domain_error, "value " + str() + " is irrational");
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

void SqrtSum::add_term(const Integer& radicand, const Rational& coefficient) {
  if (sgn(coefficient) == 0) return;
  auto [it, inserted] = terms_.try_emplace(radicand, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int SqrtSum::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return sgn(terms_.begin()->second);
  // Nonzero by linear independence, so refinement terminates.
  for (mpfr_prec_t prec = 64;; prec *= 2) {
    MpfrNumber lo(prec), hi(prec);
    enclose(terms_, prec, lo, hi);
    if (mpfr_sgn(lo.get()) > 0) return 1;
    if (mpfr_sgn(hi.get()) < 0) return -1;
  }
}

double SqrtSum::to_double() const {
  if (terms_.empty()) return 0.0;
  if (is_rational()) return rsum::to_double(terms_.begin()->second);
  for (mpfr_prec_t prec = 96;; prec *= 2) {
    MpfrNumber lo(prec), hi(prec);
    enclose(terms_, prec, lo, hi);
    double dl = mpfr_get_d(lo.get(), MPFR_RNDN);
    double dh = mpfr_get_d(hi.get(), MPFR_RNDN);
    if (dl == dh) return dl;
    if (prec > (1 << 16)) return dl;
  }
}

std::string SqrtSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [radicand, coefficient] : terms_) {
    std::string piece;
    if (radicand == 1) {
      piece = coefficient.get_str();
    } else if (coefficient == 1) {
      piece = "sqrt(" + radicand.get_str() + ")";
    } else if (coefficient == -1) {
      piece = "-sqrt(" + radicand.get_str() + ")";
    } else {
      piece = coefficient.get_str() + "*sqrt(" + radicand.get_str() + ")";
    }
    if (!out.empty() && piece.front() != '-') out += '+';
    out += piece;
  }
  return out;
}

SqrtSum SqrtSum::conjugate(const Integer& prime_like) const {
  SqrtSum out = *this;
  for (auto& [radicand, coefficient] : out.terms_) {
    if (mpz_divisible_p(radicand.get_mpz_t(), prime_like.get_mpz_t()) != 0) coefficient = -coefficient;
  }
  return out;
}

SqrtSum SqrtSum::inverse() const {
  if (terms_.empty()) throw Error(ErrorCode::domain_error, "division by zero");
  if (is_rational()) return SqrtSum(Rational(1 / terms_.begin()->second));
  std::vector<Integer> radicands;
  for (const auto& [radicand, coefficient] : terms_) {
    if (radicand != 1) radicands.push_back(radicand);
  }
  SqrtSum numerator(1L);
  SqrtSum norm = *this;
  for (const auto& b : coprime_basis(radicands)) {
    SqrtSum conj = norm.conjugate(b);
    numerator *= conj;
    norm *= conj;
  }
  return numerator * SqrtSum(Rational(1 / norm.rational()));
}

SqrtSum& SqrtSum::operator+=(const SqrtSum& other) {
  for (const auto& [radicand, coefficient] : other.terms_) add_term(radicand, coefficient);
  return *this;
}

SqrtSum& SqrtSum::operator-=(const SqrtSum& other) {
  for (const auto& [radicand, coefficient] : other.terms_) add_term(radicand, Rational(-coefficient));
  return *this;
}

SqrtSum& SqrtSum::operator*=(const SqrtSum& other) {
  SqrtSum product;
  for (const auto& [ra, ca] : terms_) {
    for (const auto& [rb, cb] : other.terms_) {
      if (ra == 1 || rb == 1) {
        product.add_term(ra == 1 ? rb : ra, Rational(ca * cb));
        continue;
      }
      Integer g = gcd(ra, rb);
      Integer radicand = (ra / g) * (rb / g);
      product.add_term(radicand, Rational(ca * cb * g));
    }
  }
  terms_ = std::move(product.terms_);
  return *this;
}

SqrtSum& SqrtSum::operator/=(const SqrtSum& other) {
  if (other.is_rational()) {
    Rational d = other.rational();
    if (sgn(d) == 0) throw Error(ErrorCode::domain_error, "division by zero");
    for (auto& [radicand, coefficient] : terms_) coefficient /= d;
    return *this;
  }
  return *this *= other.inverse();
}

SqrtSum SqrtSum::operator-() const {
  SqrtSum out = *this;
  for (auto& [radicand, coefficient] : out.terms_) coefficient = -coefficient;
  return out;
}

int SqrtSum::compare(const SqrtSum& a, const SqrtSum& b) {
  if (a.is_rational() && b.is_rational()) {
    int c = cmp(a.rational(), b.rational());
    return (c > 0) - (c < 0);
  }
  return (a - b).sign();
}

const SqrtSum& Scalar::exact_value() const {
  if (!exact()) throw Error(ErrorCode::internal, "float scalar used where an exact value is required");
  return std::get<SqrtSum>(value_);
}

double Scalar::float_value() const {
  if (exact()) throw Error(ErrorCode::internal, "exact scalar used where a float value is required");
  return std::get<double>(value_);
}

double Scalar::to_double() const {
  return exact() ? std::get<SqrtSum>(value_).to_double() : std::get<double>(value_);
}

std::optional<std::string> Scalar::exact_string() const {
  if (!exact()) return std::nullopt;
  return std::get<SqrtSum>(value_).str();
}

namespace {

SqrtSum as_exact(const Scalar& s) {
  return s.exact() ? s.exact_value() : SqrtSum(Rational(s.float_value()));
}

}  // namespace

int compare(const Scalar& a, const Scalar& b) {
  if (!a.exact() && !b.exact()) {
    double x = a.float_value(), y = b.float_value();
    return (x > y) - (x < y);
  }
  return SqrtSum::compare(as_exact(a), as_exact(b));
}

int compare(const Rational& a, const Scalar& b) { return compare(Scalar(a), b); }

}  // namespace rsum
