#include "rsum/explore.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>
#include <optional>

#include "rsum/bounds.hpp"

namespace rsum {

EstimateCI wilson_interval(std::uint64_t hits, std::uint64_t samples, double confidence) {
  if (samples == 0) throw Error(ErrorCode::invalid_input, "samples must be at least 1");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::invalid_input, "confidence must lie strictly between 0 and 1");
  }
  boost::math::normal_distribution<double> normal;
  double z = boost::math::quantile(normal, 1.0 - (1.0 - confidence) / 2.0);
  double n = static_cast<double>(samples);
  double p = static_cast<double>(hits) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));

  EstimateCI out;
  out.estimate = p;
  out.half_width = half;
  out.lower = std::max(0.0, center - half);
  out.upper = std::min(1.0, center + half);
  out.confidence = confidence;
  out.samples = samples;
  out.hits = hits;
  return out;
}

EstimateCI monte_carlo(const WeightVector& w, const Scalar& t, std::uint64_t samples, std::uint64_t seed,
                       double confidence) {
  if (samples == 0) throw Error(ErrorCode::invalid_input, "samples must be at least 1");
  double t_approx = t.to_double();
  if (!std::isfinite(t_approx) || t_approx < 0.0) throw Error(ErrorCode::invalid_input, "threshold must be finite and nonnegative");

  std::size_t n = w.size();
  std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(words);
  std::span<const double> x = w.approx();

  std::optional<SqrtSum> exact_t;
  double margin = 0.0;
  if (w.exact()) {
    exact_t = t.exact() ? t.exact_value() : SqrtSum(Rational(t.float_value()));
    double total = 0.0;
    for (double v : x) total += v;
    margin = (2.0 * static_cast<double>(n) + 16.0) * (std::numeric_limits<double>::epsilon() / 2) *
                 (total + t_approx + 1.0) +
             1e-300;
  }

  Random rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& word : bits) word = rng.next();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      bool plus = (bits[i / 64] >> (i % 64)) & 1u;
      sum = plus ? sum + x[i] : sum - x[i];
    }
    bool inside;
    if (!w.exact()) {
      inside = std::fabs(sum) <= t_approx;
    } else {
      double d = std::fabs(sum) - t_approx;
      if (d < -margin) {
        inside = true;
      } else if (d > margin) {
        inside = false;
      } else {
        SqrtSum exact;
        for (std::size_t i = 0; i < n; ++i) {
          bool plus = (bits[i / 64] >> (i % 64)) & 1u;
          if (plus) {
            exact += w.exact_values()[i];
          } else {
            exact -= w.exact_values()[i];
          }
        }
        if (exact.sign() < 0) exact = -exact;
        inside = exact <= *exact_t;
      }
    }
    hits += inside ? 1 : 0;
  }
  EstimateCI out = wilson_interval(hits, samples, confidence);
  out.seed = seed;
  return out;
}

// ---------------------------------------------------------------------------
// Lemma sweep

const LemmaRow& LemmaSweep::minimum() const {
  if (rows.empty()) throw Error(ErrorCode::internal, "empty lemma sweep");
  const LemmaRow* best = &rows.front();
  for (const auto& row : rows) {
    if (row.minmax < best->minmax) best = &row;
  }
  return *best;
}

namespace {

using Wide = __int128;

// Largest cross-multiplication product: 4k q^4 for the g grid (q = 2k(N-1)),
// 4k^3 (N-1)^4 for the argmin grid.
bool fits_wide(unsigned k, std::uint64_t last) {
  double lk = std::log2(static_cast<double>(k));
  double lq = std::log2(static_cast<double>(last));
  double g_bits = 2.0 + lk + 4.0 * (1.0 + lk + lq);
  double argmin_bits = 2.0 + 3.0 * lk + 4.0 * lq;
  return std::max(g_bits, argmin_bits) + 2.0 < 126.0;
}

template <class T>
T lift(std::int64_t v) {
  if constexpr (std::is_same_v<T, Wide>) {
    return static_cast<Wide>(v);
  } else {
    return T(static_cast<long>(v));
  }
}

template <class T>
struct GridChecks {
  unsigned k;
  std::int64_t last;  // grid_points - 1

  // g_k nondecreasing on x_i = ((N-1) + i(2k-1)) / (2k(N-1)) <=> (1 - kx^2)/(2-x)^2 nonincreasing.
  std::optional<std::size_t> first_g_failure() const {
    T q = lift<T>(2 * static_cast<std::int64_t>(k) * last);
    T kk = lift<T>(k);
    auto point = [&](std::int64_t i) { return lift<T>(last + i * (2 * static_cast<std::int64_t>(k) - 1)); };
    auto numer = [&](const T& p) { return T(q * q - kk * p * p); };
    auto denom = [&](const T& p) {
      T d = T(2) * q - p;
      return T(d * d);
    };
    T p0 = point(0);
    T a0 = numer(p0), d0 = denom(p0);
    for (std::int64_t i = 0; i < last; ++i) {
      T p1 = point(i + 1);
      T a1 = numer(p1), d1 = denom(p1);
      if (T(a0 * d1) < T(a1 * d0)) return static_cast<std::size_t>(i);
      a0 = a1;
      d0 = d1;
    }
    return std::nullopt;
  }

  // h_k nonincreasing on x_i = i/(N-1) <=> (k - (1-x)^2)/(2-x)^2 nondecreasing.
  std::optional<std::size_t> first_h_failure() const {
    T q = lift<T>(last);
    T kq2 = lift<T>(k) * q * q;
    auto numer = [&](std::int64_t i) {
      T r = q - lift<T>(i);
      return T(kq2 - r * r);
    };
    auto denom = [&](std::int64_t i) {
      T d = T(2) * q - lift<T>(i);
      return T(d * d);
    };
    T b0 = numer(0), d0 = denom(0);
    for (std::int64_t i = 0; i < last; ++i) {
      T b1 = numer(i + 1), d1 = denom(i + 1);
      if (T(b0 * d1) > T(b1 * d0)) return static_cast<std::size_t>(i);
      b0 = b1;
      d0 = d1;
    }
    return std::nullopt;
  }

  // Index of the first grid point i/(N-1) minimizing max(g_k, h_k), i.e.
  // maximizing min(k(q^2 - k p^2), k q^2 - (q-p)^2) / (k (2q-p)^2).
  std::size_t argmin() const {
    T q = lift<T>(last);
    T kk = lift<T>(k);
    auto value = [&](std::int64_t i, T& m, T& e) {
      T p = lift<T>(i);
      T f = kk * (q * q - kk * p * p);
      T r = q - p;
      T g = kk * q * q - r * r;
      m = f < g ? f : g;
      T d = T(2) * q - p;
      e = kk * d * d;
    };
    T best_m, best_e;
    value(0, best_m, best_e);
    std::size_t best = 0;
    for (std::int64_t i = 1; i <= last; ++i) {
      T m, e;
      value(i, m, e);
      if (T(m * best_e) > T(best_m * e)) {
        best_m = m;
        best_e = e;
        best = static_cast<std::size_t>(i);
      }
    }
    return best;
  }
};

template <class T>
void grid_checks(LemmaRow& row, std::int64_t last, std::vector<LemmaViolation>& violations) {
  GridChecks<T> checks{row.k, last};
  std::int64_t k = row.k;
  if (auto i = checks.first_g_failure()) {
    row.monotone_g_ok = false;
    Rational x(Integer(static_cast<long>(last + static_cast<std::int64_t>(*i) * (2 * k - 1))),
               Integer(static_cast<long>(2 * k * last)));
    x.canonicalize();
    violations.push_back({row.k, "monotone_g", x, "g decreases between consecutive grid points"});
  }
  if (auto i = checks.first_h_failure()) {
    row.monotone_h_ok = false;
    Rational x(Integer(static_cast<long>(*i)), Integer(static_cast<long>(last)));
    x.canonicalize();
    violations.push_back({row.k, "monotone_h", x, "h increases between consecutive grid points"});
  }
  std::int64_t i = static_cast<std::int64_t>(checks.argmin());
  std::int64_t offset = i * (k + 1) - last;  // (x_i - 1/(k+1)) * (N-1)(k+1)
  if (offset < -(k + 1) || offset > k + 1) {
    row.argmin_ok = false;
    Rational x(Integer(static_cast<long>(i)), Integer(static_cast<long>(last)));
    x.canonicalize();
    violations.push_back({row.k, "argmin", x, "grid minimum of max(g, h) is more than one cell from 1/(k+1)"});
  }
}

}  // namespace

LemmaSweep lemma_sweep(unsigned k_max, std::size_t grid_points, LemmaArithmetic arithmetic) {
  if (k_max < 2) throw Error(ErrorCode::invalid_input, "k_max must be at least 2");
  if (grid_points < 3) throw Error(ErrorCode::invalid_input, "grid needs at least 3 points");
  if (k_max > 100000000u || grid_points > (std::size_t{1} << 31)) {
    throw Error(ErrorCode::invalid_input, "lemma sweep size out of range");
  }
  LemmaSweep sweep;
  sweep.k_max = k_max;
  sweep.grid_points = grid_points;
  auto last = static_cast<std::int64_t>(grid_points - 1);
  Rational floor_value;
  Rational previous;

  for (unsigned k = 2; k <= k_max; ++k) {
    LemmaRow row;
    row.k = k;
    row.crossing_x = Rational(1, static_cast<unsigned long>(k) + 1);
    row.g_at_crossing = g(k, row.crossing_x);
    row.h_at_crossing = h(k, row.crossing_x);
    row.minmax = row.g_at_crossing;
    if (row.g_at_crossing != row.h_at_crossing) {
      row.crossing_ok = false;
      sweep.violations.push_back({k, "crossing", row.crossing_x, "g and h differ at 1/(k+1)"});
    }
    if (k == 2) {
      floor_value = row.minmax;
    } else if (row.minmax < previous || row.minmax < floor_value) {
      row.minmax_monotone_ok = false;
      sweep.violations.push_back({k, "minmax_monotone", row.crossing_x, "minmax bound decreased"});
    }
    previous = row.minmax;

    if (arithmetic == LemmaArithmetic::automatic && fits_wide(k, static_cast<std::uint64_t>(last))) {
      grid_checks<Wide>(row, last, sweep.violations);
    } else {
      grid_checks<Integer>(row, last, sweep.violations);
    }
    sweep.rows.push_back(std::move(row));
  }
  return sweep;
}

// ---------------------------------------------------------------------------
// Extremal search

namespace {

struct Candidate {
  WeightVector w;
  std::uint64_t count;
  double margin;
};

// Lower probability first, then larger distance from the boundary.
bool better(const Candidate& a, const Candidate& b) {
  if (a.count != b.count) return a.count < b.count;
  return a.margin > b.margin;
}

class Search {
 public:
  Search(unsigned n, std::uint64_t budget, std::uint64_t seed, const EngineOptions& engine,
         const SearchOptions& options)
      : n_(n), budget_(budget), rng_(seed), engine_(engine), options_(options) {}

  SearchResult run() {
    std::optional<Candidate> best;
    std::vector<SearchStep> trajectory;
    std::uint64_t restarts = 0;
    while (used_ < budget_) {
      ++restarts;
      std::vector<double> start(n_);
      for (auto& v : start) v = rng_.uniform_open_closed();
      Candidate current = evaluate(start);
      offer(current, best, trajectory);
      double step = options_.initial_step;
      while (used_ < budget_ && step >= options_.min_step) {
        bool moved = false;
        for (unsigned i = 0; i < n_ && !moved && used_ < budget_; ++i) {
          auto dir = tangent(current.w, i);
          if (!dir) continue;
          for (double sign : {1.0, -1.0}) {
            if (used_ >= budget_) break;
            std::vector<double> next(n_);
            for (unsigned j = 0; j < n_; ++j) next[j] = current.w.approx(j) + sign * step * (*dir)[j];
            Candidate c = evaluate(next);
            if (better(c, current)) {
              current = std::move(c);
              offer(current, best, trajectory);
              moved = true;
              break;
            }
          }
        }
        if (!moved) step /= 2.0;
      }
    }
    Rational prob = threshold_probability(best->w, Scalar(1.0), false, engine_).probability();
    if (prob != probability(best->count)) throw Error(ErrorCode::internal, "search objective disagrees with the engine");
    SearchResult result{best->w, prob, best->margin, std::move(trajectory), used_, restarts, prob < case2_floor()};
    return result;
  }

 private:
  Rational probability(std::uint64_t count) const {
    Rational p(Integer(std::to_string(count)), power_of_two(n_).get_num());
    p.canonicalize();
    return p;
  }

  Candidate evaluate(const std::vector<double>& raw) {
    ++used_;
    WeightVector w = WeightVector::canonicalize(raw, NumericMode::floating);
    std::uint64_t count = threshold_probability(w, Scalar(1.0), false, engine_).count;
    double margin = boundary_margin(w, 1.0, engine_);
    return {std::move(w), count, margin};
  }

  void offer(const Candidate& c, std::optional<Candidate>& best, std::vector<SearchStep>& trajectory) const {
    if (best && !better(c, *best)) return;
    bool new_probability = !best || c.count != best->count;
    best = c;
    if (new_probability) trajectory.push_back({used_, probability(c.count)});
  }

  // Unit tangent direction e_i - w_i w at w, or nothing when degenerate.
  std::optional<std::vector<double>> tangent(const WeightVector& w, unsigned i) const {
    std::vector<double> d(n_);
    double norm2 = 0.0;
    for (unsigned j = 0; j < n_; ++j) {
      d[j] = (j == i ? 1.0 : 0.0) - w.approx(i) * w.approx(j);
      norm2 += d[j] * d[j];
    }
    if (norm2 < 1e-24) return std::nullopt;
    double norm = std::sqrt(norm2);
    for (auto& v : d) v /= norm;
    return d;
  }

  unsigned n_;
  std::uint64_t budget_;
  Random rng_;
  EngineOptions engine_;
  SearchOptions options_;
  std::uint64_t used_ = 0;
};

}  // namespace

SearchResult minimize_probability(unsigned n, std::uint64_t budget, std::uint64_t seed, const EngineOptions& engine,
                                  const SearchOptions& search) {
  if (budget == 0) throw Error(ErrorCode::invalid_input, "search budget must be at least 1");
  if (n < 2) throw Error(ErrorCode::invalid_input, "search needs n >= 2");
  unsigned limit = std::min(engine.mitm_limit, 63u);
  if (n > limit) {
    throw Error(ErrorCode::instance_too_large, "instance too large: n = " + std::to_string(n) +
                                                   " exceeds the meet-in-the-middle limit of " + std::to_string(limit));
  }
  if (!(search.initial_step > 0.0) || !(search.min_step > 0.0)) {
    throw Error(ErrorCode::invalid_input, "search steps must be positive");
  }
  return Search(n, budget, seed, engine, search).run();
}

}  // namespace rsum
