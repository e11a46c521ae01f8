#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/rational.hpp"

namespace extremal {

// A subset of a finite space's points, stored as a bit vector. Bit i has
// numeric weight 2^i; tie-breaking rules elsewhere compare that value.
class SubsetRef {
 public:
  SubsetRef() = default;
  explicit SubsetRef(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static SubsetRef from_mask(std::size_t n, std::uint64_t mask) {
    SubsetRef s(n);
    for (std::size_t i = 0; i < n && i < 64; ++i) {
      if (mask >> i & 1u) s.set(i);
    }
    return s;
  }

  static SubsetRef from_indices(std::size_t n, std::initializer_list<std::size_t> idx) {
    SubsetRef s(n);
    for (auto i : idx) s.set(i);
    return s;
  }

  static SubsetRef from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
    SubsetRef s(n);
    for (auto i : idx) s.set(i);
    return s;
  }

  static SubsetRef full(std::size_t n) {
    SubsetRef s(n);
    for (std::size_t i = 0; i < n; ++i) s.set(i);
    return s;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return w_[i / 64] >> (i % 64) & 1u; }

  void set(std::size_t i, bool v = true) {
    if (i >= n_) throw std::out_of_range("SubsetRef::set: index out of range");
    if (v)
      w_[i / 64] |= std::uint64_t(1) << (i % 64);
    else
      w_[i / 64] &= ~(std::uint64_t(1) << (i % 64));
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto word : w_) c += static_cast<std::size_t>(__builtin_popcountll(word));
    return c;
  }

  bool any() const {
    for (auto word : w_)
      if (word) return true;
    return false;
  }

  std::uint64_t to_mask() const {
    if (n_ > 64) throw std::logic_error("SubsetRef::to_mask: more than 64 points");
    return w_.empty() ? 0 : w_[0];
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  // Highest point index on the left, so the string reads as a binary numeral.
  std::string bit_string() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) s[n_ - 1 - i] = '1';
    return s;
  }

  // Numeric-value order of the bit vectors; used for deterministic ties.
  static int compare_value(const SubsetRef& a, const SubsetRef& b) {
    std::size_t words = std::max(a.w_.size(), b.w_.size());
    for (std::size_t k = words; k-- > 0;) {
      std::uint64_t wa = k < a.w_.size() ? a.w_[k] : 0;
      std::uint64_t wb = k < b.w_.size() ? b.w_[k] : 0;
      if (wa != wb) return wa < wb ? -1 : 1;
    }
    return 0;
  }

  friend bool operator==(const SubsetRef& a, const SubsetRef& b) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// A function V -> Q, one exact value per point.
struct RealValuedFunction {
  std::vector<Rational> values;
};

enum class PowerMode { CountDiffering, SumOfBase };

class FiniteSpace;
FiniteSpace hamming_power(const FiniteSpace& base, unsigned n, PowerMode mode,
                          std::size_t max_points);

// A finite probability metric space: point labels, an exact symmetric
// distance matrix, and exact nonnegative weights summing to one.
// Immutable after construction; all operations on it are pure.
class FiniteSpace {
 public:
  static FiniteSpace from_matrix(std::vector<std::string> labels,
                                 std::vector<std::vector<Rational>> dist,
                                 std::vector<Rational> weight) {
    const std::size_t n = labels.size();
    if (n == 0) throw SpaceValidationError("space must have at least one point");
    if (dist.size() != n)
      throw SpaceValidationError("dist matrix must have one row per point (got " +
                                 std::to_string(dist.size()) + " rows for " + std::to_string(n) +
                                 " points)");
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i].size() != n)
        throw SpaceValidationError("dist row " + std::to_string(i) + " has " +
                                   std::to_string(dist[i].size()) + " entries, expected " +
                                   std::to_string(n));
    }
    if (weight.size() != n)
      throw SpaceValidationError("weight vector must have one entry per point");

    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i][i] != 0)
        throw SpaceValidationError("metric axiom violated: dist[" + std::to_string(i) + "][" +
                                   std::to_string(i) + "] must be 0");
      for (std::size_t j = i + 1; j < n; ++j) {
        if (dist[i][j] != dist[j][i])
          throw SpaceValidationError(
              "metric axiom violated: asymmetry at (" + std::to_string(i) + "," +
              std::to_string(j) + "): " + to_fraction_string(dist[i][j]) + " vs " +
              to_fraction_string(dist[j][i]));
        if (dist[i][j] < 0)
          throw SpaceValidationError("metric axiom violated: negative distance at (" +
                                     std::to_string(i) + "," + std::to_string(j) + ")");
        if (dist[i][j] == 0)
          throw SpaceValidationError(
              "metric axiom violated: distinct points " + std::to_string(i) + "," +
              std::to_string(j) + " have distance 0 (pseudometrics are rejected)");
      }
    }
    // O(n^3) triangle check; spaces handled here are small by design.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (dist[i][j] > dist[i][k] + dist[k][j])
            throw SpaceValidationError(
                "triangle inequality violated at (i=" + std::to_string(i) + ",j=" +
                std::to_string(j) + ",k=" + std::to_string(k) + "): d(i,j)=" +
                to_fraction_string(dist[i][j]) + " > d(i,k)+d(k,j)=" +
                to_fraction_string(dist[i][k] + dist[k][j]));
        }
      }
    }

    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (weight[i] < 0)
        throw SpaceValidationError("weights must be nonnegative: weight[" + std::to_string(i) +
                                   "] = " + to_fraction_string(weight[i]));
      total += weight[i];
    }
    if (total != 1)
      throw SpaceValidationError("weights must sum to 1 exactly (sum = " +
                                 to_fraction_string(total) + ")");

    return FiniteSpace(Trusted{}, std::move(labels), std::move(dist), std::move(weight));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Rational& distance(std::size_t i, std::size_t j) const { return dist_[i][j]; }
  const std::vector<std::vector<Rational>>& distances() const { return dist_; }
  const Rational& weight(std::size_t i) const { return weight_[i]; }
  const std::vector<Rational>& weights() const { return weight_; }

  // Sorted distinct distance values; levels().front() == 0.
  const std::vector<Rational>& levels() const { return levels_; }
  const Rational& diameter() const { return levels_.back(); }

 private:
  struct Trusted {};

  FiniteSpace(Trusted, std::vector<std::string> labels, std::vector<std::vector<Rational>> dist,
              std::vector<Rational> weight)
      : labels_(std::move(labels)), dist_(std::move(dist)), weight_(std::move(weight)) {
    for (const auto& row : dist_)
      for (const auto& d : row) levels_.push_back(d);
    std::sort(levels_.begin(), levels_.end());
    levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
  }

  friend FiniteSpace hamming_power(const FiniteSpace&, unsigned, PowerMode, std::size_t);

  std::vector<std::string> labels_;
  std::vector<std::vector<Rational>> dist_;
  std::vector<Rational> weight_;
  std::vector<Rational> levels_;
};

// Product space of n coordinates over `base`: the distance either counts
// differing coordinates or sums the base distances per coordinate, and the
// weight is the product measure. Point index i decodes to digits
// c_j = (i / |base|^j) mod |base|; labels read most-significant digit first.
// Both modes yield a metric by construction, so the product skips the
// O(|V|^3) re-validation that from_matrix performs.
inline FiniteSpace hamming_power(const FiniteSpace& base, unsigned n, PowerMode mode,
                                 std::size_t max_points = 4096) {
  if (n < 1) throw std::invalid_argument("hamming_power: exponent must be positive");
  const std::size_t s = base.size();
  std::size_t total = 1;
  for (unsigned j = 0; j < n; ++j) {
    if (total > max_points / s)
      throw CapExceededError("hamming_power: " + std::to_string(s) + "^" + std::to_string(n) +
                             " points exceeds the cap of " + std::to_string(max_points));
    total *= s;
  }

  bool short_labels = true;
  for (std::size_t i = 0; i < s; ++i)
    if (base.label(i).size() != 1) short_labels = false;

  auto digits_of = [&](std::size_t idx) {
    std::vector<std::size_t> c(n);
    for (unsigned j = 0; j < n; ++j) {
      c[j] = idx % s;
      idx /= s;
    }
    return c;
  };

  std::vector<std::string> labels(total);
  for (std::size_t i = 0; i < total; ++i) {
    auto c = digits_of(i);
    std::string lab;
    for (unsigned j = n; j-- > 0;) {
      if (!lab.empty() && !short_labels) lab += ",";
      lab += base.label(c[j]);
    }
    labels[i] = std::move(lab);
  }

  std::vector<std::vector<Rational>> dist(total, std::vector<Rational>(total, 0));
  for (std::size_t i = 0; i < total; ++i) {
    auto ci = digits_of(i);
    for (std::size_t j = i + 1; j < total; ++j) {
      auto cj = digits_of(j);
      Rational d = 0;
      for (unsigned k = 0; k < n; ++k) {
        if (ci[k] == cj[k]) continue;
        if (mode == PowerMode::CountDiffering)
          d += 1;
        else
          d += base.distance(ci[k], cj[k]);
      }
      dist[i][j] = d;
      dist[j][i] = std::move(d);
    }
  }

  std::vector<Rational> weight(total, 1);
  for (std::size_t i = 0; i < total; ++i)
    for (auto c : digits_of(i)) weight[i] *= base.weight(c);

  return FiniteSpace(FiniteSpace::Trusted{}, std::move(labels), std::move(dist),
                     std::move(weight));
}

namespace detail {
inline void require_nonempty(const SubsetRef& a, const char* op) {
  if (!a.any()) throw std::invalid_argument(std::string(op) + ": the set must be nonempty");
  // a.size() consistency is the caller's contract; checked where cheap.
}
}  // namespace detail

// d(A, u) for every point u, as an exact function.
inline RealValuedFunction dist_to_set(const FiniteSpace& space, const SubsetRef& a) {
  detail::require_nonempty(a, "dist_to_set");
  const std::size_t n = space.size();
  RealValuedFunction f;
  f.values.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    bool first = true;
    Rational best = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (!a.test(v)) continue;
      if (first || space.distance(v, u) < best) {
        best = space.distance(v, u);
        first = false;
      }
    }
    f.values[u] = std::move(best);
  }
  return f;
}

// The closed h-extension {u : d(u, A) <= h}, compared exactly.
inline SubsetRef neighborhood(const FiniteSpace& space, const SubsetRef& a, const Rational& h) {
  detail::require_nonempty(a, "neighborhood");
  if (h < 0) throw std::invalid_argument("neighborhood: radius must be nonnegative");
  auto d = dist_to_set(space, a);
  SubsetRef out(space.size());
  for (std::size_t u = 0; u < space.size(); ++u)
    if (d.values[u] <= h) out.set(u);
  return out;
}

inline Rational measure(const FiniteSpace& space, const SubsetRef& a) {
  Rational m = 0;
  for (std::size_t u = 0; u < space.size(); ++u)
    if (a.test(u)) m += space.weight(u);
  return m;
}

inline Rational mean_dist(const FiniteSpace& space, const SubsetRef& a) {
  detail::require_nonempty(a, "mean_dist");
  auto d = dist_to_set(space, a);
  Rational m = 0;
  for (std::size_t u = 0; u < space.size(); ++u) m += space.weight(u) * d.values[u];
  return m;
}

// mu{ g - E g >= x } for g = -d(A, .): the event is d(A, u) <= m(A) - x,
// i.e. the measure of the closed (m(A) - x)-extension of A, or 0 when the
// threshold is negative.
inline Rational deviation_functional(const FiniteSpace& space, const SubsetRef& a,
                                     const Rational& x) {
  detail::require_nonempty(a, "deviation_functional");
  auto d = dist_to_set(space, a);
  Rational m = 0;
  for (std::size_t u = 0; u < space.size(); ++u) m += space.weight(u) * d.values[u];
  Rational threshold = m - x;
  if (threshold < 0) return 0;
  Rational p = 0;
  for (std::size_t u = 0; u < space.size(); ++u)
    if (d.values[u] <= threshold) p += space.weight(u);
  return p;
}

inline bool is_lipschitz(const FiniteSpace& space, const RealValuedFunction& f) {
  const std::size_t n = space.size();
  if (f.values.size() != n)
    throw std::invalid_argument("is_lipschitz: function size does not match the space");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational gap = f.values[i] - f.values[j];
      if (gap < 0) gap = -gap;
      if (gap > space.distance(i, j)) return false;
    }
  return true;
}

inline Rational expectation(const FiniteSpace& space, const RealValuedFunction& f) {
  if (f.values.size() != space.size())
    throw std::invalid_argument("expectation: function size does not match the space");
  Rational e = 0;
  for (std::size_t u = 0; u < space.size(); ++u) e += space.weight(u) * f.values[u];
  return e;
}

// mu{ f - E f >= x }, non-strict, exact.
inline Rational deviation_of_function(const FiniteSpace& space, const RealValuedFunction& f,
                                      const Rational& x) {
  Rational threshold = expectation(space, f) + x;
  Rational p = 0;
  for (std::size_t u = 0; u < space.size(); ++u)
    if (f.values[u] >= threshold) p += space.weight(u);
  return p;
}

struct Anchor {
  std::size_t point = 0;
  Rational offset;
};

// f(u) = min_i (c_i + d(a_i, u)): a minimum of 1-Lipschitz cones, so the
// result is 1-Lipschitz for any offsets.
inline RealValuedFunction anchored_lipschitz(const FiniteSpace& space,
                                             std::span<const Anchor> anchors) {
  if (anchors.empty())
    throw std::invalid_argument("anchored_lipschitz: at least one anchor required");
  for (const auto& a : anchors)
    if (a.point >= space.size())
      throw std::invalid_argument("anchored_lipschitz: anchor point out of range");
  RealValuedFunction f;
  f.values.resize(space.size());
  for (std::size_t u = 0; u < space.size(); ++u) {
    bool first = true;
    Rational best = 0;
    for (const auto& a : anchors) {
      Rational v = a.offset + space.distance(a.point, u);
      if (first || v < best) {
        best = std::move(v);
        first = false;
      }
    }
    f.values[u] = std::move(best);
  }
  return f;
}

inline RealValuedFunction anchored_lipschitz(const FiniteSpace& space,
                                             std::initializer_list<Anchor> anchors) {
  return anchored_lipschitz(space, std::span<const Anchor>(anchors.begin(), anchors.size()));
}

// Draws a random anchored function: 1..4 anchor points with offsets of the
// form z or z/2, |z| bounded by twice the diameter. Deterministic given the
// generator state.
inline RealValuedFunction sample_lipschitz(const FiniteSpace& space, std::mt19937_64& rng) {
  const std::size_t n = space.size();
  std::size_t count = 1 + static_cast<std::size_t>(rng() % std::min<std::size_t>(n, 4));
  Int d_ceil = rational_ceil(space.diameter());
  long long span = 2 * std::max<long long>(1, d_ceil.convert_to<long long>());
  std::vector<Anchor> anchors(count);
  for (auto& a : anchors) {
    a.point = static_cast<std::size_t>(rng() % n);
    long long num = static_cast<long long>(rng() % static_cast<std::uint64_t>(2 * span + 1)) - span;
    long long den = (rng() & 1u) ? 1 : 2;
    a.offset = Rational(num, den);
  }
  return anchored_lipschitz(space, std::span<const Anchor>(anchors.data(), anchors.size()));
}

inline RealValuedFunction sample_lipschitz(const FiniteSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_lipschitz(space, rng);
}

}  // namespace extremal
