#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/space.hpp"

namespace extremal::oracle {

inline constexpr std::size_t kDefaultEnumerationCap = 16;

struct Options {
  std::size_t cap = kDefaultEnumerationCap;  // max point count for 2^|V| enumeration
  unsigned workers = 1;
};

struct ExtremalWitness {
  Rational value;
  SubsetRef argmax;
  Rational mean_dist_at_argmax;
};

struct ProfileCell {
  Rational min_measure;
  SubsetRef witness;
};

// Brute-force vertex-isoperimetric profile: for each cardinality k and each
// distance level h, the minimum of mu(A^h) over |A| >= k, with one minimizing
// set (lowest bit-vector value on ties).
struct ProfileTable {
  std::size_t points = 0;
  std::vector<Rational> radii;                 // sorted distinct distances, radii[0] == 0
  std::vector<std::vector<ProfileCell>> rows;  // rows[k-1][level]

  const ProfileCell& cell(std::size_t k, std::size_t level) const { return rows[k - 1][level]; }
};

struct ThresholdWitness {
  Rational threshold;
  SubsetRef witness;
};

struct IsoCounterexample {
  Rational threshold;
  Rational h1, h2;
  SubsetRef best_at_h1, best_at_h2;
};

struct IsoperimetricVerdict {
  bool is_isoperimetric = false;
  std::vector<ThresholdWitness> witnesses;         // one per achievable threshold when true
  std::optional<IsoCounterexample> counterexample;  // populated when false
};

struct SampledBoundReport {
  Rational oracle_value;
  Rational max_sampled;
  std::uint64_t trials = 0;
  bool witness_attains = false;
  bool ok = false;
};

namespace detail {

inline void check_cap(const FiniteSpace& space, const Options& opt) {
  if (space.size() > opt.cap)
    throw CapExceededError("enumeration cap exceeded: space has " +
                           std::to_string(space.size()) + " points, cap is " +
                           std::to_string(opt.cap) + " (raise it explicitly if intended)");
  if (space.size() > 30)
    throw CapExceededError("enumeration over more than 30 points is not supported");
}

// Exact scaled-integer view of a space: weights over a common denominator W,
// distance levels over a common denominator Ld, and per-point closed-ball
// bitmasks per level. Only usable when every scaled value fits comfortably
// in 64 bits; callers fall back to plain rational arithmetic otherwise.
struct FastScan {
  std::size_t n = 0;
  std::size_t L = 0;
  std::vector<Rational> levels;
  std::vector<std::int64_t> lev;  // scaled levels
  std::int64_t Ld = 1;
  std::vector<std::int64_t> w;  // scaled weights, sum == W
  std::int64_t W = 1;
  std::vector<std::uint32_t> ball;  // ball[u*L + l] = {v : d(u,v) <= levels[l]}

  // Smallest level index l with ball(u, l) meeting the mask, i.e. the level
  // of d(A, u). The top level contains every point, so the scan terminates.
  void level_indices(std::uint32_t mask, std::uint16_t* out) const {
    for (std::size_t u = 0; u < n; ++u) {
      const std::uint32_t* b = &ball[u * L];
      std::uint16_t l = 0;
      while (!(b[l] & mask)) ++l;
      out[u] = l;
    }
  }
};

inline std::optional<FastScan> try_build_fast_scan(const FiniteSpace& space) {
  constexpr std::int64_t kLimit = std::int64_t(1) << 31;
  const std::size_t n = space.size();
  FastScan f;
  f.n = n;
  f.levels = space.levels();
  f.L = f.levels.size();

  Int ld = 1, wd = 1;
  for (const auto& l : f.levels) ld = boost::multiprecision::lcm(ld, rational_den(l));
  for (std::size_t u = 0; u < n; ++u)
    wd = boost::multiprecision::lcm(wd, rational_den(space.weight(u)));
  if (ld > kLimit || wd > kLimit) return std::nullopt;
  f.Ld = ld.convert_to<std::int64_t>();
  f.W = wd.convert_to<std::int64_t>();

  f.lev.resize(f.L);
  for (std::size_t l = 0; l < f.L; ++l) {
    Int scaled = rational_num(f.levels[l]) * (ld / rational_den(f.levels[l]));
    if (scaled > kLimit) return std::nullopt;
    f.lev[l] = scaled.convert_to<std::int64_t>();
  }
  f.w.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    Int scaled = rational_num(space.weight(u)) * (wd / rational_den(space.weight(u)));
    if (scaled > kLimit) return std::nullopt;
    f.w[u] = scaled.convert_to<std::int64_t>();
  }

  f.ball.assign(n * f.L, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      auto it = std::lower_bound(f.levels.begin(), f.levels.end(), space.distance(u, v));
      auto idx = static_cast<std::size_t>(it - f.levels.begin());
      f.ball[u * f.L + idx] |= std::uint32_t(1) << v;
    }
    for (std::size_t l = 1; l < f.L; ++l) f.ball[u * f.L + l] |= f.ball[u * f.L + l - 1];
  }
  return f;
}

// Runs fn(chunk_lo, chunk_hi, chunk_result&) over a partition of [begin, end).
// Results are merged by the caller with an associative, commutative rule, so
// the outcome is independent of the worker count.
template <class Result, class Fn, class Merge>
Result parallel_scan(std::uint64_t begin, std::uint64_t end, unsigned workers, Result init, Fn fn,
                     Merge merge) {
  workers = std::max(1u, std::min(workers, 64u));
  if (workers == 1 || end - begin < 1024) {
    Result r = init;
    fn(begin, end, r);
    return r;
  }
  std::vector<Result> partial(workers, init);
  std::vector<std::thread> threads;
  std::uint64_t span = (end - begin + workers - 1) / workers;
  for (unsigned t = 0; t < workers; ++t) {
    std::uint64_t lo = begin + t * span;
    std::uint64_t hi = std::min(end, lo + span);
    if (lo >= hi) break;
    threads.emplace_back([&, t, lo, hi] { fn(lo, hi, partial[t]); });
  }
  for (auto& th : threads) th.join();
  Result r = init;
  for (const auto& p : partial) merge(r, p);
  return r;
}

inline bool mask_less(std::uint32_t a, std::uint32_t b) { return a < b; }

}  // namespace detail

// D(x) as the exact maximum of the deviation functional over every nonempty
// subset. Ties are broken toward the lowest bit-vector value; the scan runs
// in increasing mask order so the result is deterministic for any worker
// count. For x <= 0 the full set yields 1.
inline ExtremalWitness deviation_sup(const FiniteSpace& space, const Rational& x,
                                     Options opt = {}) {
  detail::check_cap(space, opt);
  const std::size_t n = space.size();
  const std::uint64_t end = std::uint64_t(1) << n;

  auto fast = detail::try_build_fast_scan(space);
  Int px = rational_num(x), qx = rational_den(x);
  constexpr std::int64_t kLimit = std::int64_t(1) << 31;
  bool x_fits = px < kLimit && px > -kLimit && qx < kLimit;

  std::uint64_t best_mask = 0;

  if (fast && x_fits) {
    const auto& fs = *fast;
    const auto p = px.convert_to<std::int64_t>();
    const auto q = qx.convert_to<std::int64_t>();
    const __int128 pwl = static_cast<__int128>(p) * fs.W * fs.Ld;
    std::vector<__int128> lhs(fs.L);
    for (std::size_t l = 0; l < fs.L; ++l)
      lhs[l] = static_cast<__int128>(fs.lev[l]) * fs.W * q;

    struct Best {
      std::int64_t val = -1;
      std::uint64_t mask = 0;
    };
    auto result = detail::parallel_scan(
        1, end, opt.workers, Best{},
        [&](std::uint64_t lo, std::uint64_t hi, Best& b) {
          std::uint16_t lvl[32];
          for (std::uint64_t mask = lo; mask < hi; ++mask) {
            fs.level_indices(static_cast<std::uint32_t>(mask), lvl);
            __int128 s = 0;
            for (std::size_t u = 0; u < fs.n; ++u)
              s += static_cast<__int128>(fs.w[u]) * fs.lev[lvl[u]];
            const __int128 rhs = s * q - pwl;
            std::int64_t val = 0;
            for (std::size_t u = 0; u < fs.n; ++u)
              if (lhs[lvl[u]] <= rhs) val += fs.w[u];
            if (val > b.val || (val == b.val && mask < b.mask)) b = {val, mask};
          }
        },
        [](Best& a, const Best& b) {
          if (b.val > a.val || (b.val == a.val && b.val >= 0 && b.mask < a.mask)) a = b;
        });
    best_mask = result.mask;
  } else {
    Rational best_val = -1;
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      auto a = SubsetRef::from_mask(n, mask);
      Rational v = deviation_functional(space, a, x);
      if (v > best_val) {
        best_val = v;
        best_mask = mask;
      }
    }
  }

  ExtremalWitness w;
  w.argmax = SubsetRef::from_mask(n, best_mask);
  w.value = deviation_functional(space, w.argmax, x);
  w.mean_dist_at_argmax = mean_dist(space, w.argmax);
  return w;
}

// Exhaustive minima of mu(A^h) per (cardinality, level). Minima over |A| >= k
// are obtained from exact-cardinality minima by a suffix pass; equal values
// resolve to the lowest bit-vector witness.
inline ProfileTable profile(const FiniteSpace& space, Options opt = {}) {
  detail::check_cap(space, opt);
  const std::size_t n = space.size();
  const std::uint64_t end = std::uint64_t(1) << n;

  ProfileTable table;
  table.points = n;
  table.radii = space.levels();
  const std::size_t L = table.radii.size();

  struct Cell {
    std::int64_t val = -1;  // scaled measure; -1 = unset
    std::uint64_t mask = 0;
  };
  auto cell_merge = [](Cell& a, const Cell& b) {
    if (b.val < 0) return;
    if (a.val < 0 || b.val < a.val || (b.val == a.val && b.mask < a.mask)) a = b;
  };

  auto fast = detail::try_build_fast_scan(space);
  std::vector<std::vector<Cell>> grid(n, std::vector<Cell>(L));
  std::int64_t scale = 1;

  if (fast) {
    const auto& fs = *fast;
    scale = fs.W;
    using Grid = std::vector<std::vector<Cell>>;
    grid = detail::parallel_scan(
        1, end, opt.workers, Grid(n, std::vector<Cell>(L)),
        [&](std::uint64_t lo, std::uint64_t hi, Grid& g) {
          std::uint16_t lvl[32];
          std::vector<std::int64_t> acc(fs.L);
          for (std::uint64_t mask = lo; mask < hi; ++mask) {
            fs.level_indices(static_cast<std::uint32_t>(mask), lvl);
            std::fill(acc.begin(), acc.end(), 0);
            for (std::size_t u = 0; u < fs.n; ++u) acc[lvl[u]] += fs.w[u];
            std::int64_t run = 0;
            auto k = static_cast<std::size_t>(__builtin_popcountll(mask));
            for (std::size_t l = 0; l < fs.L; ++l) {
              run += acc[l];
              Cell cand{run, mask};
              auto& cur = g[k - 1][l];
              if (cur.val < 0 || cand.val < cur.val ||
                  (cand.val == cur.val && cand.mask < cur.mask))
                cur = cand;
            }
          }
        },
        [&](Grid& a, const Grid& b) {
          for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < L; ++l) cell_merge(a[k][l], b[k][l]);
        });
  } else {
    // Rational fallback: measures mapped onto a per-run dense rank so the
    // same integer grid logic applies.
    std::vector<Rational> vals;
    std::vector<std::vector<Rational>> raw(n, std::vector<Rational>(L, -1));
    std::vector<std::vector<std::uint64_t>> raw_mask(n, std::vector<std::uint64_t>(L, 0));
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      auto a = SubsetRef::from_mask(n, mask);
      auto d = dist_to_set(space, a);
      std::size_t k = a.count();
      for (std::size_t l = 0; l < L; ++l) {
        Rational m = 0;
        for (std::size_t u = 0; u < n; ++u)
          if (d.values[u] <= table.radii[l]) m += space.weight(u);
        if (raw[k - 1][l] < 0 || m < raw[k - 1][l]) {
          raw[k - 1][l] = m;
          raw_mask[k - 1][l] = mask;
        }
      }
    }
    // suffix pass over cardinalities, then emit directly
    for (std::size_t k = n - 1; k-- > 0;) {
      for (std::size_t l = 0; l < L; ++l) {
        if (raw[k + 1][l] >= 0 && (raw[k][l] < 0 || raw[k + 1][l] < raw[k][l] ||
                                   (raw[k + 1][l] == raw[k][l] && raw_mask[k + 1][l] < raw_mask[k][l]))) {
          raw[k][l] = raw[k + 1][l];
          raw_mask[k][l] = raw_mask[k + 1][l];
        }
      }
    }
    table.rows.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      table.rows[k].resize(L);
      for (std::size_t l = 0; l < L; ++l)
        table.rows[k][l] = ProfileCell{raw[k][l], SubsetRef::from_mask(n, raw_mask[k][l])};
    }
    return table;
  }

  for (std::size_t k = n - 1; k-- > 0;)
    for (std::size_t l = 0; l < L; ++l) cell_merge(grid[k][l], grid[k + 1][l]);

  table.rows.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    table.rows[k].resize(L);
    for (std::size_t l = 0; l < L; ++l)
      table.rows[k][l] =
          ProfileCell{Rational(grid[k][l].val, scale), SubsetRef::from_mask(n, grid[k][l].mask)};
  }
  return table;
}

namespace detail {

// Shared threshold sweep for the isoperimetric verdict. `mu` and `ext` are
// per-subset scalars (scaled integers or rationals); per threshold, pass one
// finds per-radius minima and pass two looks for one set attaining them all.
template <class Scalar>
IsoperimetricVerdict verdict_sweep(std::size_t n, std::uint64_t end,
                                   const std::vector<Rational>& levels,
                                   const std::vector<Scalar>& mu,
                                   const std::vector<std::vector<Scalar>>& ext,
                                   const std::function<Rational(const Scalar&)>& to_rational) {
  const std::size_t L = levels.size();
  std::vector<Scalar> thresholds(mu.begin() + 1, mu.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

  if (thresholds.size() * (end - 1) * L > (std::uint64_t(1) << 30))
    throw CapExceededError("isoperimetric verdict: too many threshold/subset pairs; "
                           "use a smaller space or coarser weights");

  IsoperimetricVerdict verdict;
  for (const auto& t : thresholds) {
    std::vector<const Scalar*> best(L, nullptr);
    std::vector<std::uint64_t> best_mask(L, 0);
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      if (mu[mask] < t) continue;
      for (std::size_t l = 0; l < L; ++l) {
        if (!best[l] || ext[mask][l] < *best[l]) {
          best[l] = &ext[mask][l];
          best_mask[l] = mask;
        }
      }
    }
    std::uint64_t simultaneous = 0;
    bool found = false;
    for (std::uint64_t mask = 1; mask < end && !found; ++mask) {
      if (mu[mask] < t) continue;
      bool all = true;
      for (std::size_t l = 0; l < L && all; ++l) all = ext[mask][l] == *best[l];
      if (all) {
        simultaneous = mask;
        found = true;
      }
    }
    if (found) {
      verdict.witnesses.push_back({to_rational(t), SubsetRef::from_mask(n, simultaneous)});
    } else {
      std::uint64_t a1 = best_mask[0];
      std::size_t l2 = 0;
      for (std::size_t l = 1; l < L; ++l) {
        if (ext[a1][l] != *best[l]) {
          l2 = l;
          break;
        }
      }
      verdict.is_isoperimetric = false;
      verdict.counterexample =
          IsoCounterexample{to_rational(t), levels[0], levels[l2], SubsetRef::from_mask(n, a1),
                            SubsetRef::from_mask(n, best_mask[l2])};
      verdict.witnesses.clear();
      return verdict;
    }
  }
  verdict.is_isoperimetric = true;
  return verdict;
}

}  // namespace detail

// Whether one minimizer per achievable threshold t works for every radius
// simultaneously. Thresholds enumerate the achievable measures of nonempty
// subsets (finitely many). Two passes per threshold keep the logic plainly
// auditable.
inline IsoperimetricVerdict isoperimetric_verdict(const FiniteSpace& space, Options opt = {}) {
  detail::check_cap(space, opt);
  const std::size_t n = space.size();
  const std::uint64_t end = std::uint64_t(1) << n;
  const auto& levels = space.levels();
  const std::size_t L = levels.size();

  if ((end - 1) * L > (std::uint64_t(1) << 26))
    throw CapExceededError("isoperimetric verdict: subset/level table too large; "
                           "use a smaller space");

  auto fast = detail::try_build_fast_scan(space);
  if (fast) {
    const auto& fs = *fast;
    std::vector<std::int64_t> mu(end, 0);
    std::vector<std::vector<std::int64_t>> ext(end);
    std::uint16_t lvl[32];
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      mu[mask] = mu[mask & (mask - 1)] + fs.w[static_cast<std::size_t>(__builtin_ctzll(mask))];
      fs.level_indices(static_cast<std::uint32_t>(mask), lvl);
      std::vector<std::int64_t> acc(L, 0);
      for (std::size_t u = 0; u < n; ++u) acc[lvl[u]] += fs.w[u];
      std::int64_t run = 0;
      for (auto& a : acc) {
        run += a;
        a = run;
      }
      ext[mask] = std::move(acc);
    }
    std::int64_t scale = fs.W;
    std::function<Rational(const std::int64_t&)> conv = [scale](const std::int64_t& v) {
      return Rational(Int(v), Int(scale));
    };
    return detail::verdict_sweep<std::int64_t>(n, end, levels, mu, ext, conv);
  }

  if (end > (std::uint64_t(1) << 12))
    throw CapExceededError("isoperimetric verdict: weights too fine for the scaled scan "
                           "on a space this large");
  std::vector<Rational> mu(end, 0);
  std::vector<std::vector<Rational>> ext(end);
  for (std::uint64_t mask = 1; mask < end; ++mask) {
    auto a = SubsetRef::from_mask(n, mask);
    auto d = dist_to_set(space, a);
    mu[mask] = measure(space, a);
    std::vector<Rational> e(L);
    for (std::size_t l = 0; l < L; ++l) {
      Rational m = 0;
      for (std::size_t u = 0; u < n; ++u)
        if (d.values[u] <= levels[l]) m += space.weight(u);
      e[l] = std::move(m);
    }
    ext[mask] = std::move(e);
  }
  std::function<Rational(const Rational&)> conv = [](const Rational& v) { return v; };
  return detail::verdict_sweep<Rational>(n, end, levels, mu, ext, conv);
}

// Samples random anchored Lipschitz functions and checks that none of them
// beats the exhaustive supremum, and that the negated distance function to
// the argmax attains it exactly.
inline SampledBoundReport random_lipschitz_check(const FiniteSpace& space, const Rational& x,
                                                 std::uint64_t trials, std::uint64_t seed,
                                                 Options opt = {}) {
  SampledBoundReport report;
  auto w = deviation_sup(space, x, opt);
  report.oracle_value = w.value;
  report.trials = trials;

  std::mt19937_64 rng(seed);
  Rational max_sampled = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto f = sample_lipschitz(space, rng);
    Rational dev = deviation_of_function(space, f, x);
    if (dev > max_sampled) max_sampled = dev;
  }
  report.max_sampled = max_sampled;

  auto g = dist_to_set(space, w.argmax);
  for (auto& v : g.values) v = -v;
  report.witness_attains = deviation_of_function(space, g, x) == w.value;
  report.ok = max_sampled <= w.value && report.witness_attains;
  return report;
}

// Random metric space: a symmetric integer matrix repaired to a metric by
// shortest-path closure, with random positive rational weights.
inline FiniteSpace random_metric_space(std::mt19937_64& rng, std::size_t min_points = 2,
                                       std::size_t max_points = 10) {
  if (min_points < 2 || max_points < min_points)
    throw std::invalid_argument("random_metric_space: bad point range");
  std::size_t n = min_points + rng() % (max_points - min_points + 1);

  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = 1 + static_cast<long long>(rng() % 9);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);

  std::vector<long long> wv(n);
  long long total = 0;
  for (auto& v : wv) {
    v = 1 + static_cast<long long>(rng() % 12);
    total += v;
  }

  std::vector<std::string> labels(n);
  std::vector<std::vector<Rational>> dist(n, std::vector<Rational>(n, 0));
  std::vector<Rational> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "p" + std::to_string(i);
    weight[i] = Rational(wv[i], total);
    for (std::size_t j = 0; j < n; ++j) dist[i][j] = d[i][j];
  }
  return FiniteSpace::from_matrix(std::move(labels), std::move(dist), std::move(weight));
}

}  // namespace extremal::oracle
