#include "rsum/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>

#include "rsum/engine_domains.hpp"

namespace rsum {

namespace {

using detail::FloatDomain;
using detail::IntegerDomain;
using detail::Lattice;
using detail::RadicalDomain;

constexpr std::size_t kBlocks = 64;
constexpr unsigned kTaskDepth = 8;

unsigned resolve_threads(const EngineOptions& options) {
  unsigned t = options.threads == 0 ? default_thread_count() : options.threads;
  return std::max(1u, t);
}

// Runs task(i) for i in [0, count); tasks write only to their own slots.
template <class Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

void check_size(std::size_t n, unsigned limit, const char* what) {
  if (n > limit || n > 63) {
    throw Error(ErrorCode::instance_too_large,
                "instance too large: n = " + std::to_string(n) + " exceeds the " + what + " limit of " +
                    std::to_string(std::min(limit, 63u)));
  }
}

void check_threshold(const Scalar& t) {
  if (t.exact()) {
    if (t.exact_value().sign() < 0) throw Error(ErrorCode::invalid_input, "threshold must be nonnegative");
    return;
  }
  double v = t.float_value();
  if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::invalid_input, "threshold must be finite and nonnegative");
}

SqrtSum exact_threshold(const Scalar& t) {
  return t.exact() ? t.exact_value() : SqrtSum(Rational(t.float_value()));
}

// Runs body(domain) with the numeric domain matching the weights' mode.
template <class Body>
auto with_domain(const WeightsView& w, const Scalar& t, bool strict, Body body) {
  if (!w.is_exact()) return body(FloatDomain(w.approx, t.to_double(), strict));
  Lattice lattice(w.exact);
  SqrtSum exact_t = exact_threshold(t);
  if (lattice.rational() && exact_t.is_rational()) return body(IntegerDomain(lattice, exact_t.rational(), strict));
  return body(RadicalDomain(lattice, w.approx, exact_t, strict));
}

template <class Domain>
std::uint64_t mitm_count(const Domain& d, unsigned threads) {
  using Value = typename Domain::Value;
  std::size_t n = d.size();
  std::size_t mid = n / 2;
  std::vector<Value> left = d.half(0, mid);
  std::vector<Value> right = d.half(mid, n);
  std::sort(left.begin(), left.end(), [&](const Value& a, const Value& b) { return d.less(a, b, 0, mid); });
  std::sort(right.begin(), right.end(), [&](const Value& a, const Value& b) { return d.less(a, b, mid, n); });

  std::size_t blocks = std::min(kBlocks, left.size());
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_for(blocks, threads, [&](std::size_t block) {
    std::size_t lo = left.size() * block / blocks;
    std::size_t hi = left.size() * (block + 1) / blocks;
    if (lo == hi) return;
    auto up_end = std::partition_point(right.begin(), right.end(),
                                       [&](const Value& b) { return d.upper(left[lo], b); });
    auto dn_end = std::partition_point(right.begin(), right.end(),
                                       [&](const Value& b) { return d.below(left[lo], b); });
    std::size_t up = static_cast<std::size_t>(up_end - right.begin());
    std::size_t dn = static_cast<std::size_t>(dn_end - right.begin());
    std::uint64_t count = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      while (up > 0 && !d.upper(left[i], right[up - 1])) --up;
      while (dn > 0 && !d.below(left[i], right[dn - 1])) --dn;
      count += up - dn;
    }
    partial[block] = count;
  });
  std::uint64_t total = 0;
  for (auto c : partial) total += c;
  return total;
}

// Sign sequences walk for prefix_partition. Tails are sorted lazily, once per k.
template <class Domain>
class PartitionWalk {
 public:
  using Value = typename Domain::Value;

  PartitionWalk(const Domain& d, const FloatDomain* tie_hi, const FloatDomain* tie_lo)
      : d_(d), n_(d.size()), tails_(n_ + 1), once_(n_ + 1), tie_hi_(tie_hi), tie_lo_(tie_lo) {}

  struct Counts {
    std::vector<std::uint64_t> count, joint;
    std::uint64_t near = 0;
    explicit Counts(std::size_t n) : count(n + 1, 0), joint(n + 1, 0) {}
    void add(const Counts& o) {
      for (std::size_t k = 0; k < count.size(); ++k) {
        count[k] += o.count[k];
        joint[k] += o.joint[k];
      }
      near += o.near;
    }
  };

  Counts run(unsigned threads) {
    struct Task {
      Value value;
      std::size_t depth;
    };
    std::vector<Task> tasks;
    Counts root(n_);
    std::size_t split = std::min<std::size_t>(n_, kTaskDepth);
    // epsilon_1 = +1; the mirror half is counted by doubling.
    collect(d_.extend(d_.zero(), 0, true), 1, split, root, [&](Value v, std::size_t depth) {
      tasks.push_back({v, depth});
    });
    std::vector<Counts> partial(tasks.size(), Counts(n_));
    parallel_for(tasks.size(), threads, [&](std::size_t i) { walk(tasks[i].value, tasks[i].depth, partial[i]); });
    for (const auto& p : partial) root.add(p);
    for (std::size_t k = 0; k <= n_; ++k) {
      root.count[k] *= 2;
      root.joint[k] *= 2;
    }
    root.near *= 2;
    return root;
  }

 private:
  // Returns true if the sequence is decided at this depth.
  bool decide(const Value& v, std::size_t depth, Counts& out) {
    if (depth == n_) {
      out.count[n_] += 1;
      bool inside = d_.upper(v, d_.zero()) && !d_.below(v, d_.zero());
      out.joint[n_] += inside ? 1 : 0;
      if constexpr (std::is_same_v<Domain, FloatDomain>) {
        if (d_.near_window(v)) ++out.near;
      }
      return true;
    }
    if (depth >= 2) {
      if (d_.near_event(v, depth)) ++out.near;
      if (d_.event(v, depth)) {
        out.count[depth] += std::uint64_t{1} << (n_ - depth);
        out.joint[depth] += tail_count(v, depth, out);
        return true;
      }
    }
    return false;
  }

  template <class Emit>
  void collect(const Value& v, std::size_t depth, std::size_t split, Counts& out, Emit emit) {
    if (decide(v, depth, out)) return;
    if (depth == split) {
      emit(v, depth);
      return;
    }
    collect(d_.extend(v, depth, true), depth + 1, split, out, emit);
    collect(d_.extend(v, depth, false), depth + 1, split, out, emit);
  }

  void walk(const Value& v, std::size_t depth, Counts& out) {
    for (bool plus : {true, false}) {
      Value child = d_.extend(v, depth, plus);
      if (!decide(child, depth + 1, out)) walk(child, depth + 1, out);
    }
  }

  std::uint64_t tail_count(const Value& prefix, std::size_t k, Counts& out) {
    std::call_once(once_[k], [&] {
      tails_[k] = d_.half(k, n_);
      std::sort(tails_[k].begin(), tails_[k].end(),
                [&](const Value& a, const Value& b) { return d_.less(a, b, k, n_); });
    });
    const auto& tail = tails_[k];
    auto up = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return d_.upper(prefix, b); });
    auto dn = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return d_.below(prefix, b); });
    if constexpr (std::is_same_v<Domain, FloatDomain>) {
      auto hi = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return tie_hi_->upper(prefix, b); });
      auto lo = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return tie_hi_->below(prefix, b); });
      std::uint64_t wide = static_cast<std::uint64_t>((hi - tail.begin()) - (lo - tail.begin()));
      std::uint64_t narrow = 0;
      if (tie_lo_ != nullptr) {
        auto nhi = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return tie_lo_->upper(prefix, b); });
        auto nlo = std::partition_point(tail.begin(), tail.end(), [&](const Value& b) { return tie_lo_->below(prefix, b); });
        narrow = static_cast<std::uint64_t>((nhi - tail.begin()) - (nlo - tail.begin()));
      }
      out.near += wide - narrow;
    }
    return static_cast<std::uint64_t>(up - dn);
  }

  const Domain& d_;
  std::size_t n_;
  std::vector<std::vector<Value>> tails_;
  std::vector<std::once_flag> once_;
  const FloatDomain* tie_hi_;
  const FloatDomain* tie_lo_;
};

}  // namespace

unsigned default_thread_count() {
  if (const char* env = std::getenv("RSUM_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) return static_cast<unsigned>(v);
  }
  return 1;
}

Rational ThresholdResult::probability() const {
  Rational p(Integer(std::to_string(count)), power_of_two(n).get_num());
  p.canonicalize();
  return p;
}

ThresholdResult threshold_count(const WeightsView& weights, const Scalar& t, bool strict,
                                const EngineOptions& options) {
  check_size(weights.size(), options.mitm_limit, "meet-in-the-middle");
  check_threshold(t);
  ThresholdResult result;
  result.n = static_cast<unsigned>(weights.size());
  bool zero_t = t.exact() ? t.exact_value().is_zero() : t.float_value() == 0.0;
  if (strict && zero_t) return result;

  unsigned threads = resolve_threads(options);
  result.count = with_domain(weights, t, strict, [&](const auto& domain) { return mitm_count(domain, threads); });

  if (!weights.is_exact()) {
    double tv = t.to_double();
    std::uint64_t wide = mitm_count(FloatDomain(weights.approx, tv + FloatDomain::kTieWindow, false), threads);
    double narrow_t = tv - FloatDomain::kTieWindow;
    std::uint64_t narrow = narrow_t > 0.0 ? mitm_count(FloatDomain(weights.approx, narrow_t, true), threads) : 0;
    result.near_boundary = wide - narrow;
  }
  return result;
}

ThresholdResult threshold_probability(const WeightVector& w, const Scalar& t, bool strict,
                                      const EngineOptions& options) {
  return threshold_count(w.view(), t, strict, options);
}

SumDistribution::SumDistribution(std::shared_ptr<const WeightVector> weights, std::vector<Entry> entries)
    : weights_(std::move(weights)), entries_(std::move(entries)) {}

Scalar SumDistribution::value(std::size_t i) const {
  const Entry& e = entries_.at(i);
  if (!weights_->exact()) return e.approx;
  SqrtSum sum;
  for (unsigned j = 0; j < n(); ++j) {
    if (e.representative.sign(j) > 0) {
      sum += weights_->exact_values()[j];
    } else {
      sum -= weights_->exact_values()[j];
    }
  }
  return sum;
}

Rational SumDistribution::probability_within(const Scalar& t, bool strict) const {
  Integer hits = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    bool inside;
    if (weights_->exact()) {
      SqrtSum v = value(i).exact_value();
      SqrtSum magnitude = v.sign() < 0 ? -v : v;
      SqrtSum limit = exact_threshold(t);
      inside = strict ? magnitude < limit : magnitude <= limit;
    } else {
      double magnitude = std::fabs(entries_[i].approx);
      inside = strict ? magnitude < t.to_double() : magnitude <= t.to_double();
    }
    if (inside) hits += Integer(std::to_string(entries_[i].count));
  }
  Rational p(hits, power_of_two(n()).get_num());
  p.canonicalize();
  return p;
}

SumDistribution sum_distribution(const WeightVector& w, const EngineOptions& options) {
  check_size(w.size(), options.full_limit, "full-enumeration");
  auto weights = std::make_shared<const WeightVector>(w);
  std::vector<SumDistribution::Entry> entries;
  std::size_t n = w.size();
  std::size_t mid = n / 2;

  with_domain(w.view(), Scalar(w.exact() ? Scalar(SqrtSum(1L)) : Scalar(1.0)), false, [&](const auto& d) {
    using Value = typename std::decay_t<decltype(d)>::Value;
    std::vector<Value> left = d.half(0, mid);
    std::vector<Value> right = d.half(mid, n);
    struct Item {
      Value value;
      std::uint64_t mask;
    };
    std::vector<Item> all;
    all.reserve(left.size() * right.size());
    for (std::size_t b = 0; b < right.size(); ++b) {
      for (std::size_t a = 0; a < left.size(); ++a) {
        all.push_back({d.combine(left[a], right[b]), static_cast<std::uint64_t>(a) | (static_cast<std::uint64_t>(b) << mid)});
      }
    }
    std::sort(all.begin(), all.end(), [&](const Item& x, const Item& y) { return d.less(x.value, y.value, 0, n); });
    for (std::size_t i = 0; i < all.size();) {
      std::size_t j = i + 1;
      while (j < all.size() && d.equal(all[i].value, all[j].value, 0, n)) ++j;
      double approx;
      if constexpr (std::is_same_v<Value, double>) {
        approx = all[i].value;
      } else if constexpr (std::is_same_v<Value, std::int64_t>) {
        approx = d.exact(all[i].value).to_double();
      } else {
        approx = all[i].value.approx;
      }
      entries.push_back({approx, SignPattern{all[i].mask, static_cast<unsigned>(n)}, j - i});
      i = j;
    }
    return 0;
  });
  return SumDistribution(std::move(weights), std::move(entries));
}

Rational PartitionEvent::probability(unsigned n) const {
  Rational p(Integer(std::to_string(count)), power_of_two(n).get_num());
  p.canonicalize();
  return p;
}

Rational PartitionEvent::joint_probability(unsigned n) const {
  Rational p(Integer(std::to_string(joint)), power_of_two(n).get_num());
  p.canonicalize();
  return p;
}

std::optional<Rational> PartitionEvent::conditional() const {
  if (count == 0) return std::nullopt;
  Rational p(Integer(std::to_string(joint)), Integer(std::to_string(count)));
  p.canonicalize();
  return p;
}

std::uint64_t PartitionReport::total_joint() const {
  std::uint64_t total = 0;
  for (const auto& e : events) total += e.joint;
  return total;
}

Rational PartitionReport::total_probability() const {
  Rational p(Integer(std::to_string(total_joint())), power_of_two(n).get_num());
  p.canonicalize();
  return p;
}

PartitionReport prefix_partition(const WeightVector& w, const EngineOptions& options) {
  if (w.size() < 2) throw Error(ErrorCode::invalid_input, "prefix partition needs n >= 2");
  if (case_of(w) != CaseTag::case2) {
    throw Error(ErrorCode::wrong_case, "not case 2: x1 + x2 > 1, the events A_2..A_n do not cover the space");
  }
  check_size(w.size(), options.full_limit, "full-enumeration");
  unsigned threads = resolve_threads(options);
  std::size_t n = w.size();

  PartitionReport report;
  report.n = static_cast<unsigned>(n);
  auto fill = [&](const auto& counts) {
    for (std::size_t k = 2; k <= n; ++k) report.events.push_back({static_cast<unsigned>(k), counts.count[k], counts.joint[k]});
    report.near_boundary = counts.near;
  };

  Scalar one = w.exact() ? Scalar(SqrtSum(1L)) : Scalar(1.0);
  if (!w.exact()) {
    FloatDomain domain(w.approx(), 1.0, false);
    FloatDomain tie_hi(w.approx(), 1.0 + FloatDomain::kTieWindow, false);
    FloatDomain tie_lo(w.approx(), 1.0 - FloatDomain::kTieWindow, true);
    PartitionWalk<FloatDomain> walk(domain, &tie_hi, &tie_lo);
    fill(walk.run(threads));
    return report;
  }
  with_domain(w.view(), one, false, [&](const auto& d) {
    using Domain = std::decay_t<decltype(d)>;
    PartitionWalk<Domain> walk(d, nullptr, nullptr);
    fill(walk.run(threads));
    return 0;
  });
  return report;
}

double boundary_margin(const WeightVector& w, double t, const EngineOptions& options) {
  if (w.exact()) throw Error(ErrorCode::invalid_input, "boundary margin is defined for float mode");
  check_size(w.size(), options.mitm_limit, "meet-in-the-middle");
  FloatDomain d(w.approx(), t, false);
  std::size_t n = w.size();
  std::size_t mid = n / 2;
  std::vector<double> left = d.half(0, mid);
  std::vector<double> right = d.half(mid, n);
  std::sort(right.begin(), right.end());
  double best = std::numeric_limits<double>::infinity();
  for (double a : left) {
    for (double target : {t - a, -t - a}) {
      auto idx = static_cast<std::size_t>(std::lower_bound(right.begin(), right.end(), target) - right.begin());
      for (std::size_t c = idx == 0 ? 0 : idx - 1; c < right.size() && c <= idx + 1; ++c) {
        best = std::min(best, std::fabs(std::fabs(a + right[c]) - t));
      }
    }
  }
  return best;
}

}  // namespace rsum
