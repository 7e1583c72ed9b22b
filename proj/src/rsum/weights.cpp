#include "rsum/weights.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace rsum {

namespace {

constexpr long double kUnitTolerance = 2e-15L;

std::vector<std::string_view> split_tokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    tokens.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return tokens;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_double(std::string_view token) {
  std::string text(trim(token));
  if (text.empty()) throw Error(ErrorCode::invalid_input, "empty entry in weight list");
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) {
    throw Error(ErrorCode::invalid_input, "malformed weight '" + text + "'");
  }
  if (!std::isfinite(v) || errno == ERANGE) {
    throw Error(ErrorCode::invalid_input, "non-finite weight '" + text + "'");
  }
  return v;
}

}  // namespace

std::string to_string(NumericMode mode) { return mode == NumericMode::exact ? "exact" : "float"; }
std::string to_string(CaseTag tag) { return tag == CaseTag::case1 ? "case1" : "case2"; }

WeightsView WeightsView::subview(std::size_t begin, std::size_t end) const {
  WeightsView out{mode, approx.subspan(begin, end - begin), {}};
  if (is_exact()) out.exact = exact.subspan(begin, end - begin);
  return out;
}

WeightVector WeightVector::canonicalize(std::span<const double> raw, NumericMode mode) {
  if (raw.empty()) throw Error(ErrorCode::invalid_input, "weight list is empty");
  for (double v : raw) {
    if (!std::isfinite(v)) throw Error(ErrorCode::invalid_input, "invalid input: non-finite weight");
  }
  if (mode == NumericMode::exact) {
    std::vector<Rational> rationals;
    rationals.reserve(raw.size());
    for (double v : raw) rationals.emplace_back(v);  // exact binary value
    return from_rationals(rationals);
  }

  std::vector<double> values(raw.begin(), raw.end());
  for (double& v : values) v = std::fabs(v);
  std::sort(values.begin(), values.end(), std::greater<>());
  if (values.front() == 0.0) throw Error(ErrorCode::degenerate_vector, "degenerate vector: all weights are zero");

  long double sum_sq = 0.0L;
  for (double v : values) sum_sq += static_cast<long double>(v) * v;
  if (std::fabs(sum_sq - 1.0L) > kUnitTolerance) {
    long double norm = std::sqrt(sum_sq);
    for (double& v : values) v = static_cast<double>(static_cast<long double>(v) / norm);
  }

  WeightVector w;
  w.mode_ = NumericMode::floating;
  w.approx_ = std::move(values);
  return w;
}

WeightVector WeightVector::from_rationals(std::span<const Rational> raw) {
  std::vector<Rational> squares;
  squares.reserve(raw.size());
  for (const auto& r : raw) squares.emplace_back(r * r);
  return from_squares(squares);
}

WeightVector WeightVector::from_squares(std::span<const Rational> squares) {
  if (squares.empty()) throw Error(ErrorCode::invalid_input, "weight list is empty");
  Rational total = 0;
  for (const auto& q : squares) {
    if (sgn(q) < 0) throw Error(ErrorCode::invalid_input, "squared weight " + q.get_str() + " is negative");
    total += q;
  }
  if (sgn(total) == 0) throw Error(ErrorCode::degenerate_vector, "degenerate vector: all weights are zero");

  WeightVector w;
  w.mode_ = NumericMode::exact;
  w.squares_.reserve(squares.size());
  for (const auto& q : squares) w.squares_.emplace_back(q / total);
  std::sort(w.squares_.begin(), w.squares_.end(), std::greater<>());
  for (const auto& q : w.squares_) {
    w.exact_.push_back(SqrtSum::sqrt_of(q));
    w.approx_.push_back(w.exact_.back().to_double());
  }
  return w;
}

WeightVector WeightVector::parse(std::string_view text, std::optional<NumericMode> mode) {
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::invalid_input, "empty weight specification");
  if (text.substr(0, 3) == "sq:") {
    std::vector<Rational> squares;
    for (auto token : split_tokens(text.substr(3))) squares.push_back(parse_rational(token));
    WeightVector exact = from_squares(squares);
    if (mode.value_or(NumericMode::exact) == NumericMode::exact) return exact;
    std::vector<double> values(exact.approx_.begin(), exact.approx_.end());
    return canonicalize(values, NumericMode::floating);
  }
  if (mode.value_or(NumericMode::floating) == NumericMode::exact) {
    std::vector<Rational> values;
    for (auto token : split_tokens(text)) values.push_back(parse_rational(token));
    return from_rationals(values);
  }
  std::vector<double> values;
  for (auto token : split_tokens(text)) values.push_back(parse_double(token));
  return canonicalize(values, NumericMode::floating);
}

Scalar WeightVector::value(std::size_t i) const {
  if (exact()) return i < exact_.size() ? Scalar(exact_[i]) : Scalar(SqrtSum());
  return approx(i);
}

std::string WeightVector::str() const {
  std::string out = exact() ? "sq:" : "";
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += exact() ? squares_[i].get_str() : format_double(approx_[i]);
  }
  return out;
}

bool operator==(const WeightVector& a, const WeightVector& b) {
  if (a.mode_ != b.mode_) return false;
  return a.exact() ? a.squares_ == b.squares_ : a.approx_ == b.approx_;
}

CaseTag case_of(const WeightVector& w) {
  if (w.exact()) {
    SqrtSum pair = w.value(0).exact_value() + w.value(1).exact_value();
    return pair > SqrtSum(1L) ? CaseTag::case1 : CaseTag::case2;
  }
  return w.approx(0) + w.approx(1) > 1.0 ? CaseTag::case1 : CaseTag::case2;
}

}  // namespace rsum
