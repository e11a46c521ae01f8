#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/rational.hpp"
#include "extremal/space.hpp"

namespace extremal::cube {

inline constexpr int kMaxDimension = 20;

// Tie-break inside a Hamming-weight level, selected empirically against the
// exhaustive enumeration at n = 3, 4. DescendingValue (higher bitmask first)
// is the coordinate-reversed image of the simplicial order -- vertices that
// share their top bits come first -- and passes the extremality cross-check
// at every (k, h). AscendingValue passes at n <= 3 but fails at n = 4
// (k=2, h=1: the 1-neighborhood of {0000, 0001} is not an initial segment),
// so DescendingValue is the frozen default.
enum class TieBreak { AscendingValue, DescendingValue };
inline constexpr TieBreak kDefaultTieBreak = TieBreak::DescendingValue;

// Weight-major total order on cube vertices with nested initial segments.
struct Order {
  int n = 0;
  TieBreak tie_break = kDefaultTieBreak;
  std::vector<std::uint32_t> vertex_at;  // rank -> vertex bitmask
  std::vector<std::uint32_t> rank_of;    // vertex bitmask -> rank
};

inline Order build_order(int n, TieBreak tie_break = kDefaultTieBreak,
                         int max_dimension = kMaxDimension) {
  if (n < 1) throw std::invalid_argument("cube order: dimension must be at least 1");
  if (n > max_dimension)
    throw CapExceededError("cube order: dimension " + std::to_string(n) + " exceeds the cap of " +
                           std::to_string(max_dimension));
  Order o;
  o.n = n;
  o.tie_break = tie_break;
  const std::uint32_t count = std::uint32_t(1) << n;
  o.vertex_at.reserve(count);
  std::vector<std::vector<std::uint32_t>> buckets(static_cast<std::size_t>(n) + 1);
  for (std::uint32_t v = 0; v < count; ++v)
    buckets[static_cast<std::size_t>(__builtin_popcount(v))].push_back(v);
  for (auto& bucket : buckets) {
    if (tie_break == TieBreak::DescendingValue) std::reverse(bucket.begin(), bucket.end());
    o.vertex_at.insert(o.vertex_at.end(), bucket.begin(), bucket.end());
  }
  o.rank_of.resize(count);
  for (std::uint32_t r = 0; r < count; ++r) o.rank_of[o.vertex_at[r]] = r;
  return o;
}

// N[t] = |segment(t)^1|, relying on the 1-neighborhood of an initial segment
// being an initial segment again. N[t] = 1 + max rank over the closed
// Hamming-1 neighborhoods of the first t vertices, one prefix-max sweep.
inline std::vector<std::uint32_t> neighborhood_rank_table(const Order& o) {
  const std::uint32_t count = std::uint32_t(1) << o.n;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(count) + 1);
  table[0] = 0;
  std::uint32_t prefix_max = 0;
  for (std::uint32_t r = 0; r < count; ++r) {
    std::uint32_t v = o.vertex_at[r];
    std::uint32_t m = r;
    for (int i = 0; i < o.n; ++i) m = std::max(m, o.rank_of[v ^ (std::uint32_t(1) << i)]);
    prefix_max = std::max(prefix_max, m);
    table[r + 1] = prefix_max + 1;
  }
  return table;
}

struct Witness {
  Rational value;
  std::uint64_t t_opt = 0;          // optimal segment size (meaningful when value > 0)
  Rational mean_at_t;               // mean distance to segment(t_opt)
  std::int64_t radius = 0;          // floor(m(t_opt) - x)
};

// Deviation engine over initial segments of the cube order. Measures are
// integer vertex counts over the denominator 2^n throughout.
class SegmentEngine {
 public:
  explicit SegmentEngine(int n, TieBreak tie_break = kDefaultTieBreak,
                         int max_dimension = kMaxDimension)
      : order_(build_order(n, tie_break, max_dimension)),
        nrank_(neighborhood_rank_table(order_)) {}

  int n() const { return order_.n; }
  std::uint64_t vertex_count() const { return std::uint64_t(1) << order_.n; }
  const Order& order() const { return order_; }
  const std::vector<std::uint32_t>& rank_table() const { return nrank_; }

  // First t vertices of the order.
  std::vector<std::uint32_t> segment(std::uint64_t t) const {
    require_t(t);
    return {order_.vertex_at.begin(), order_.vertex_at.begin() + static_cast<std::ptrdiff_t>(t)};
  }

  // |segment(t)^h| via h-fold application of the rank table.
  std::uint64_t iterated_rank(std::uint64_t t, std::int64_t h) const {
    require_t(t);
    std::uint64_t c = t;
    const std::uint64_t full = vertex_count();
    while (h-- > 0 && c < full) c = nrank_[c];
    return c;
  }

  // 2^n * m(t): the sum over integer radii h >= 0 of (2^n - |segment(t)^h|).
  std::int64_t mean_numerator(std::uint64_t t) const {
    require_t(t);
    const std::uint64_t full = vertex_count();
    std::int64_t s = 0;
    for (std::uint64_t c = t; c < full; c = nrank_[c]) s += static_cast<std::int64_t>(full - c);
    return s;
  }

  Rational mean_dist_segment(std::uint64_t t) const {
    return Rational(Int(mean_numerator(t)), Int(vertex_count()));
  }

  // mu{ g - E g >= x } for g = -d(segment(t), .): since distances are
  // integers, the event radius is floor(m(t) - x); below zero the event is
  // empty.
  Rational deviation_segment(std::uint64_t t, const Rational& x) const {
    require_t(t);
    Rational slack = mean_dist_segment(t) - x;
    if (slack < 0) return 0;
    Int h = rational_floor(slack);
    std::int64_t hs = h > order_.n + 1 ? order_.n + 1 : h.convert_to<std::int64_t>();
    return Rational(Int(iterated_rank(t, hs)), Int(vertex_count()));
  }

  // D(x) = max over t of the segment deviation; smallest optimal t wins ties.
  Witness deviation_sup(const Rational& x) const {
    const std::uint64_t full = vertex_count();
    const Int p = rational_num(x);
    const Int q = rational_den(x);
    const Int full_big(full);

    std::uint64_t best_count = 0, best_t = 1;
    std::int64_t best_s = 0, best_h = 0;
    bool any = false;
    for (std::uint64_t t = 1; t <= full; ++t) {
      std::int64_t s = mean_numerator(t);
      // slack = s/2^n - p/q >= 0  <=>  s*q - p*2^n >= 0
      Int num = Int(s) * q - p * full_big;
      std::uint64_t count;
      std::int64_t hs;
      if (num < 0) {
        count = 0;
        hs = 0;
      } else {
        Int h = num / (q * full_big);  // exact floor: numerator nonnegative
        hs = h > order_.n + 1 ? order_.n + 1 : h.convert_to<std::int64_t>();
        count = iterated_rank(t, hs);
      }
      if (!any || count > best_count) {
        any = true;
        best_count = count;
        best_t = t;
        best_s = s;
        best_h = hs;
      }
    }
    Witness w;
    w.value = Rational(Int(best_count), Int(full));
    w.t_opt = best_t;
    w.mean_at_t = Rational(Int(best_s), Int(full));
    w.radius = best_h;
    return w;
  }

 private:
  void require_t(std::uint64_t t) const {
    if (t < 1 || t > vertex_count())
      throw std::invalid_argument("cube segment size out of range: t = " + std::to_string(t));
  }

  Order order_;
  std::vector<std::uint32_t> nrank_;
};

inline Rational mean_dist_segment(int n, std::uint64_t t) {
  return SegmentEngine(n).mean_dist_segment(t);
}

inline Rational deviation_segment(int n, std::uint64_t t, const Rational& x) {
  return SegmentEngine(n).deviation_segment(t, x);
}

inline Witness deviation_sup(int n, const Rational& x) {
  return SegmentEngine(n).deviation_sup(x);
}

// Classical exp(-2x^2/n) bound for 1-Lipschitz functions of n independent
// bits; trivial (=1) for x < 0.
inline double mcdiarmid_bound(int n, double x) {
  if (x < 0) return 1.0;
  return std::exp(-2.0 * x * x / static_cast<double>(n));
}

}  // namespace extremal::cube
