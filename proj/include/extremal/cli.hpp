#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "extremal/builtin_spaces.hpp"
#include "extremal/cube.hpp"
#include "extremal/errors.hpp"
#include "extremal/gaussian.hpp"
#include "extremal/oracle.hpp"
#include "extremal/space_io.hpp"
#include "extremal/sphere.hpp"
#include "extremal/tables.hpp"

namespace extremal::cli {

// Exit-code contract, frozen for CI use.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitVerifyFailed = 4;

struct SpaceSelector {
  enum class Kind { Cube, Gauss, Sphere, Cycle, Diamond, File, Power };
  Kind kind = Kind::Cube;
  std::string text;     // original selector, echoed in output rows
  std::string path;     // Kind::File
  std::string base;     // Kind::Power
  unsigned exponent = 1;
};

inline SpaceSelector parse_space_selector(const std::string& s) {
  SpaceSelector sel;
  sel.text = s;
  if (s == "cube") {
    sel.kind = SpaceSelector::Kind::Cube;
  } else if (s == "gauss") {
    sel.kind = SpaceSelector::Kind::Gauss;
  } else if (s == "sphere") {
    sel.kind = SpaceSelector::Kind::Sphere;
  } else if (s == "cycle") {
    sel.kind = SpaceSelector::Kind::Cycle;
  } else if (s == "diamond") {
    sel.kind = SpaceSelector::Kind::Diamond;
  } else if (s.rfind("file:", 0) == 0) {
    sel.kind = SpaceSelector::Kind::File;
    sel.path = s.substr(5);
    if (sel.path.empty()) throw ConfigError("space selector file: needs a path");
  } else if (s.rfind("power:", 0) == 0) {
    sel.kind = SpaceSelector::Kind::Power;
    auto body = s.substr(6);
    auto caret = body.find('^');
    if (caret == std::string::npos)
      throw ConfigError("space selector power: expects BASE^K, e.g. power:diamond^2");
    sel.base = body.substr(0, caret);
    try {
      sel.exponent = static_cast<unsigned>(std::stoul(body.substr(caret + 1)));
    } catch (...) {
      throw ConfigError("space selector power: bad exponent in \"" + s + "\"");
    }
    if (sel.exponent < 1) throw ConfigError("space selector power: exponent must be >= 1");
  } else {
    throw ConfigError("unknown space selector \"" + s +
                      "\" (expected cube|gauss|sphere|cycle|diamond|file:PATH|power:BASE^K)");
  }
  return sel;
}

// Power bases: diamond | pt2 | cycle<K> | path<K>.
inline FiniteSpace power_base_by_name(const std::string& name) {
  if (name == "diamond") return diamond_space();
  if (name == "pt2") return two_point_space();
  auto numeric_suffix = [&](const std::string& prefix) -> std::optional<int> {
    if (name.rfind(prefix, 0) != 0) return std::nullopt;
    try {
      return std::stoi(name.substr(prefix.size()));
    } catch (...) {
      throw ConfigError("bad power base \"" + name + "\"");
    }
  };
  if (auto k = numeric_suffix("cycle")) return cycle_space(*k);
  if (auto k = numeric_suffix("path")) return path_space(*k);
  throw ConfigError("unknown power base \"" + name +
                    "\" (expected diamond|pt2|cycle<K>|path<K>)");
}

// Materializes the finite space behind a selector; continuous selectors have
// no finite realization and are rejected here.
inline FiniteSpace realize_space(const SpaceSelector& sel, int n, std::size_t max_points) {
  using Kind = SpaceSelector::Kind;
  switch (sel.kind) {
    case Kind::Cube:
      if (n < 1) throw ConfigError("cube space needs -n DIMENSION");
      return cube_space(n, max_points);
    case Kind::Cycle:
      if (n < 3) throw ConfigError("cycle space needs -n POINTS with at least 3 points");
      return cycle_space(n);
    case Kind::Diamond:
      return diamond_space();
    case Kind::File:
      return load_space(sel.path);
    case Kind::Power:
      return hamming_power(power_base_by_name(sel.base), sel.exponent,
                           PowerMode::CountDiffering, max_points);
    default:
      throw ConfigError("selector \"" + sel.text + "\" does not describe a finite space");
  }
}

inline Rational parse_x(const std::string& s) {
  auto r = parse_rational(s);
  if (!r) throw ConfigError("cannot parse x value \"" + s + "\" as a rational or decimal");
  return *r;
}

inline std::vector<Rational> parse_x_values(const std::string& x_list, const std::string& x_range) {
  std::vector<Rational> xs;
  if (!x_list.empty()) {
    std::stringstream ss(x_list);
    std::string item;
    while (std::getline(ss, item, ',')) xs.push_back(parse_x(item));
  }
  if (!x_range.empty()) {
    auto c1 = x_range.find(':');
    auto c2 = c1 == std::string::npos ? std::string::npos : x_range.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw ConfigError("x range must be LO:HI:STEP, got \"" + x_range + "\"");
    Rational lo = parse_x(x_range.substr(0, c1));
    Rational hi = parse_x(x_range.substr(c1 + 1, c2 - c1 - 1));
    Rational step = parse_x(x_range.substr(c2 + 1));
    if (step <= 0) throw ConfigError("x range step must be positive");
    for (Rational v = lo; v <= hi; v += step) xs.push_back(v);
  }
  if (xs.empty()) throw ConfigError("no x values given: use -x LIST and/or --x-range LO:HI:STEP");
  return xs;
}

struct RunConfig {
  std::string space = "cube";
  int n = -1;
  std::string x_list;
  std::string x_range;
  std::string format = "csv";
  std::size_t cap = oracle::kDefaultEnumerationCap;
  std::size_t max_points = 4096;
  std::uint64_t seed = 12345;
  std::uint64_t trials = 2000;
  unsigned workers = 1;
  double tol = 1e-12;
  int max_n = 4;
};

namespace detail {

inline const std::vector<std::string> kComputeColumns = {
    "space", "n", "x", "D_exact", "D_decimal", "witness", "mcdiarmid", "gauss_tail"};

inline std::string frac(const Rational& q) { return to_fraction_string(q); }

inline void compute_rows(Table& table, const SpaceSelector& sel, const RunConfig& cfg,
                         const std::vector<Rational>& xs, bool with_bounds) {
  using Kind = SpaceSelector::Kind;
  switch (sel.kind) {
    case Kind::Cube: {
      if (cfg.n < 1) throw ConfigError("cube space needs -n DIMENSION");
      cube::SegmentEngine engine(cfg.n);
      for (const auto& x : xs) {
        auto w = engine.deviation_sup(x);
        double xd = to_double(x);
        table.rows.push_back({sel.text, std::to_string(cfg.n), frac(x), frac(w.value),
                              format_decimal(to_double(w.value)), "t=" + std::to_string(w.t_opt),
                              format_decimal(cube::mcdiarmid_bound(cfg.n, xd)),
                              with_bounds ? format_decimal(gauss::tail_bound(xd)) : ""});
      }
      return;
    }
    case Kind::Gauss: {
      for (const auto& x : xs) {
        double xd = to_double(x);
        auto w = gauss::deviation_sup(xd, cfg.tol);
        table.rows.push_back({sel.text, "", format_decimal(xd), "", format_decimal(w.value),
                              "a=" + format_decimal(w.a_star), "",
                              format_decimal(gauss::tail_bound(xd))});
      }
      return;
    }
    case Kind::Sphere: {
      if (cfg.n < 2) throw ConfigError("sphere space needs -n DIMENSION with n >= 2");
      for (const auto& x : xs) {
        double xd = to_double(x);
        auto w = sphere::deviation_sup(cfg.n, xd, cfg.tol);
        std::string witness = w.feasible ? "theta=" + format_decimal(w.theta_star) : "infeasible";
        table.rows.push_back({sel.text, std::to_string(cfg.n), format_decimal(xd), "",
                              format_decimal(w.value), witness, "", ""});
      }
      return;
    }
    default: {
      auto space = realize_space(sel, cfg.n, cfg.max_points);
      oracle::Options opt{cfg.cap, cfg.workers};
      for (const auto& x : xs) {
        auto w = oracle::deviation_sup(space, x, opt);
        table.rows.push_back({sel.text, std::to_string(space.size()), frac(x), frac(w.value),
                              format_decimal(to_double(w.value)),
                              "bits=" + w.argmax.bit_string(), "", ""});
      }
      return;
    }
  }
}

}  // namespace detail

inline int cmd_compute(const RunConfig& cfg, std::ostream& out, bool compare_mode) {
  auto sel = parse_space_selector(cfg.space);
  if (compare_mode && sel.kind != SpaceSelector::Kind::Cube &&
      sel.kind != SpaceSelector::Kind::Gauss)
    throw ConfigError("compare needs a space with a classical bound: cube or gauss");
  auto xs = parse_x_values(cfg.x_list, cfg.x_range);
  Table table;
  table.columns = detail::kComputeColumns;
  detail::compute_rows(table, sel, cfg, xs, compare_mode);
  out << render(table, cfg.format);
  return kExitOk;
}

inline int cmd_profile(const RunConfig& cfg, std::ostream& out) {
  auto sel = parse_space_selector(cfg.space);
  if (sel.kind == SpaceSelector::Kind::Gauss || sel.kind == SpaceSelector::Kind::Sphere)
    throw ConfigError("profile needs a finite space");
  auto space = realize_space(sel, cfg.n, cfg.max_points);
  auto prof = oracle::profile(space, {cfg.cap, cfg.workers});
  Table table;
  table.columns = {"k", "h", "min_measure", "witness_bits"};
  for (std::size_t k = 1; k <= prof.points; ++k) {
    for (std::size_t l = 0; l < prof.radii.size(); ++l) {
      const auto& cell = prof.cell(k, l);
      table.rows.push_back({std::to_string(k), detail::frac(prof.radii[l]),
                            detail::frac(cell.min_measure), cell.witness.bit_string()});
    }
  }
  out << render(table, cfg.format);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify: the cross-check suite.

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace checks {

inline CheckResult cube_oracle_agreement(const RunConfig& cfg) {
  CheckResult r{"cube-oracle-agreement", true, ""};
  std::size_t checked = 0;
  for (int n = 1; n <= cfg.max_n && r.pass; ++n) {
    auto space = cube_space(n);
    cube::SegmentEngine engine(n);
    oracle::Options opt{std::max(cfg.cap, space.size()), cfg.workers};
    for (int k = 0; k <= 8 * n && r.pass; ++k) {
      Rational x(k, 8);
      auto cube_w = engine.deviation_sup(x);
      auto oracle_w = oracle::deviation_sup(space, x, opt);
      ++checked;
      if (cube_w.value != oracle_w.value) {
        r.pass = false;
        r.detail = "mismatch at n=" + std::to_string(n) + ", x=" + detail::frac(x) +
                   ": segments give " + detail::frac(cube_w.value) + ", enumeration gives " +
                   detail::frac(oracle_w.value);
      }
    }
  }
  if (r.pass)
    r.detail = "segment scan equals exhaustive enumeration at " + std::to_string(checked) +
               " (n,x) points (n<=" + std::to_string(cfg.max_n) + ", eighths grid)";
  return r;
}

inline CheckResult segments_attain_profile_minima(const RunConfig& cfg) {
  CheckResult r{"segments-attain-profile-minima", true, ""};
  std::size_t checked = 0;
  for (int n = 1; n <= cfg.max_n && r.pass; ++n) {
    auto space = cube_space(n);
    cube::SegmentEngine engine(n);
    oracle::Options opt{std::max(cfg.cap, space.size()), cfg.workers};
    auto prof = oracle::profile(space, opt);
    const auto full = engine.vertex_count();
    for (std::uint64_t k = 1; k <= full && r.pass; ++k) {
      for (std::size_t l = 0; l < prof.radii.size() && r.pass; ++l) {
        Rational segment_value(Int(engine.iterated_rank(k, static_cast<std::int64_t>(l))),
                               Int(full));
        ++checked;
        if (segment_value != prof.cell(k, l).min_measure) {
          r.pass = false;
          r.detail = "initial segment not extremal at n=" + std::to_string(n) +
                     ", k=" + std::to_string(k) + ", h=" + std::to_string(l) + ": segment " +
                     detail::frac(segment_value) + " vs minimum " +
                     detail::frac(prof.cell(k, l).min_measure);
        }
      }
    }
  }
  if (r.pass)
    r.detail = "initial segments attain every (k,h) minimum, " + std::to_string(checked) +
               " cells (n<=" + std::to_string(cfg.max_n) + ")";
  return r;
}

inline CheckResult segment_neighborhood_consistency(const RunConfig& cfg) {
  CheckResult r{"segment-neighborhood-consistency", true, ""};
  int top = std::min(cfg.max_n, 3);
  std::size_t checked = 0;
  for (int n = 1; n <= top && r.pass; ++n) {
    auto space = cube_space(n);
    cube::SegmentEngine engine(n);
    const auto full = engine.vertex_count();
    for (std::uint64_t t = 1; t <= full && r.pass; ++t) {
      auto seg_vertices = engine.segment(t);
      std::vector<std::size_t> idx(seg_vertices.begin(), seg_vertices.end());
      auto seg = SubsetRef::from_indices(space.size(), idx);
      for (int h = 0; h <= n && r.pass; ++h) {
        auto grown = neighborhood(space, seg, Rational(h));
        auto target_vertices = engine.segment(engine.iterated_rank(t, h));
        std::vector<std::size_t> tidx(target_vertices.begin(), target_vertices.end());
        auto expected = SubsetRef::from_indices(space.size(), tidx);
        ++checked;
        if (!(grown == expected)) {
          r.pass = false;
          r.detail = "rank table disagrees with set extension at n=" + std::to_string(n) +
                     ", t=" + std::to_string(t) + ", h=" + std::to_string(h);
        }
      }
    }
  }
  if (r.pass)
    r.detail = "rank table matches set extensions on " + std::to_string(checked) +
               " (t,h) pairs (n<=" + std::to_string(top) + ")";
  return r;
}

inline CheckResult random_lipschitz_lower_bound(const RunConfig& cfg) {
  CheckResult r{"random-lipschitz-lower-bound", true, ""};
  std::vector<FiniteSpace> spaces;
  spaces.push_back(cube_space(2));
  spaces.push_back(diamond_space());
  spaces.push_back(cycle_space(6));
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 3; ++i) spaces.push_back(oracle::random_metric_space(rng, 2, 10));

  oracle::Options opt{cfg.cap, cfg.workers};
  std::size_t pairs = 0;
  for (std::size_t si = 0; si < spaces.size() && r.pass; ++si) {
    const auto& space = spaces[si];
    Rational max_mean = 0;
    for (std::size_t u = 0; u < space.size(); ++u) {
      Rational m = mean_dist(space, SubsetRef::from_indices(space.size(), {u}));
      if (m > max_mean) max_mean = m;
    }
    for (int j = 0; j < 8 && r.pass; ++j) {
      Rational x = max_mean * Rational(j, 7);
      auto report = oracle::random_lipschitz_check(space, x, cfg.trials,
                                                   cfg.seed + 7919 * si + 104729u * j, opt);
      ++pairs;
      if (!report.ok) {
        r.pass = false;
        r.detail = "space " + std::to_string(si) + " (" + std::to_string(space.size()) +
                   " points), x=" + detail::frac(x) + ": sampled " +
                   detail::frac(report.max_sampled) + " vs supremum " +
                   detail::frac(report.oracle_value) +
                   (report.witness_attains ? "" : " (witness does not attain)");
      }
    }
  }
  if (r.pass)
    r.detail = std::to_string(cfg.trials) + " sampled functions per (space,x) stayed below the "
               "supremum on " + std::to_string(pairs) + " pairs, witnesses attain exactly";
  return r;
}

inline CheckResult gaussian_structure(const RunConfig& cfg) {
  CheckResult r{"gaussian-structure", true, ""};
  auto fail = [&](const std::string& why) {
    r.pass = false;
    r.detail = why;
  };

  if (std::fabs(gauss::partial_expectation(0.0) - gauss::kInvSqrt2Pi) > 1e-12)
    fail("m(0) != 1/sqrt(2 pi)");
  if (r.pass && std::fabs(gauss::deviation_sup(gauss::kInvSqrt2Pi, cfg.tol).value - 0.5) > 1e-10)
    fail("D(1/sqrt(2 pi)) != 1/2");
  if (r.pass) {
    for (double x : {1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      double a = gauss::solve_threshold(x, cfg.tol);
      if (std::fabs(gauss::partial_expectation(a) - x) > 1e-12) {
        fail("round trip m(a*(x)) != x at x=" + format_decimal(x));
        break;
      }
    }
  }
  if (r.pass && !(gauss::solve_threshold(1e-6) > gauss::solve_threshold(1e-3)))
    fail("a*(x) is not monotone as x -> 0");
  if (r.pass) {
    for (double x : {0.1, 0.5, 1.0, 2.0}) {
      auto g = gauss::grid_check(x);
      if (!g.ok) {
        fail("grid check failed at x=" + format_decimal(x) + ": grid max " +
             format_decimal(g.grid_max) + " vs value " + format_decimal(g.value));
        break;
      }
    }
  }
  if (r.pass) {
    auto mc = gauss::monte_carlo_check(1.0, 100000, cfg.seed);
    if (!mc.ok)
      fail("Monte Carlo frequency " + format_decimal(mc.freq) + " outside 3 sigma of " +
           format_decimal(mc.event_prob));
  }
  if (r.pass) {
    for (double x : {0.5, 1.0, 2.0, 4.0}) {
      if (gauss::deviation_sup(x, cfg.tol).value > gauss::tail_bound(x) + 1e-12) {
        fail("exact value exceeds exp(-x^2/2) at x=" + format_decimal(x));
        break;
      }
    }
  }
  if (r.pass) {
    double prev = 2.0;
    for (double x = 0.1; x <= 3.05; x += 0.1) {
      double v = gauss::deviation_sup(x, cfg.tol).value;
      if (v > prev + 1e-12) {
        fail("D not non-increasing near x=" + format_decimal(x));
        break;
      }
      prev = v;
    }
  }
  if (r.pass)
    r.detail = "m(0), the root at 1/sqrt(2 pi), round trips, grid scan, Monte Carlo, "
               "domination and monotonicity all hold";
  return r;
}

inline CheckResult sphere_structure(const RunConfig& cfg) {
  CheckResult r{"sphere-structure", true, ""};
  auto fail = [&](const std::string& why) {
    r.pass = false;
    r.detail = why;
  };

  for (int i = 1; i <= 20 && r.pass; ++i) {
    double x = sphere::kPi / 2.0 * i / 21.0;
    double got = sphere::deviation_sup(2, x, cfg.tol).value;
    double want = 1.0 - std::sqrt(2.0 * x / sphere::kPi);
    if (std::fabs(got - want) > 1e-9)
      fail("circle closed form off at x=" + format_decimal(x) + ": " + format_decimal(got) +
           " vs " + format_decimal(want));
  }
  for (int i = 1; i <= 10 && r.pass; ++i) {
    double x = sphere::kPi / 2.0 * i / 11.0;
    double got = sphere::deviation_sup(3, x, cfg.tol).value;
    double want = *sphere::closed_form_deviation(3, x);
    if (std::fabs(got - want) > 1e-9)
      fail("2-sphere paths disagree at x=" + format_decimal(x));
  }
  for (int n = 2; n <= 5 && r.pass; ++n) {
    for (int i = 0; i <= 16 && r.pass; ++i) {
      double theta = sphere::kPi * i / 16.0;
      double s = sphere::cap_measure(n, theta) + sphere::cap_measure(n, sphere::kPi - theta);
      if (std::fabs(s - 1.0) > 1e-10) fail("antipodal symmetry broken at n=" + std::to_string(n));
    }
    if (r.pass && std::fabs(sphere::cap_mean_dist(n, sphere::kPi)) > 1e-10)
      fail("m(pi) != 0 at n=" + std::to_string(n));
    if (r.pass && std::fabs(sphere::cap_mean_dist(n, 0.0) - sphere::kPi / 2) > 1e-9)
      fail("mean distance to a point is not pi/2 at n=" + std::to_string(n));
  }
  if (r.pass) {
    double prev = 2.0;
    for (double x = 0.05; x <= 1.75; x += 0.05) {
      double v = sphere::deviation_sup(4, x, cfg.tol).value;
      if (v > prev + 1e-12) {
        fail("sphere D not non-increasing near x=" + format_decimal(x));
        break;
      }
      prev = v;
    }
  }
  if (r.pass)
    r.detail = "circle and 2-sphere closed forms, antipodal symmetry, endpoint laws and "
               "monotonicity all hold";
  return r;
}

inline CheckResult boundary_laws(const RunConfig& cfg) {
  CheckResult r{"boundary-laws", true, ""};
  auto fail = [&](const std::string& why) {
    r.pass = false;
    r.detail = why;
  };

  cube::SegmentEngine engine(5);
  if (engine.deviation_sup(Rational(0)).value != 1) fail("cube D(0) != 1");
  if (r.pass && engine.deviation_sup(Rational(-1)).value != 1) fail("cube D(-1) != 1");
  if (r.pass && engine.deviation_sup(Rational(21, 8)).value != 0)
    fail("cube D(x) != 0 for x just above n/2");
  if (r.pass) {
    Rational prev = 2;
    for (int k = 0; k <= 24 && r.pass; ++k) {
      Rational x(k, 8);
      Rational v = engine.deviation_sup(x).value;
      if (v > prev) fail("cube sweep not non-increasing at x=" + detail::frac(x));
      prev = v;
    }
  }
  if (r.pass && gauss::deviation_sup(0.0).value != 1.0) fail("gauss D(0) != 1");
  if (r.pass && sphere::deviation_sup(3, 0.0).value != 1.0) fail("sphere D(0) != 1");
  if (r.pass && sphere::deviation_sup(3, 1.8).value != 0.0)
    fail("sphere D(x) != 0 beyond the mean distance to a point");
  if (r.pass) {
    auto diamond = diamond_space();
    oracle::Options opt{cfg.cap, cfg.workers};
    if (oracle::deviation_sup(diamond, Rational(0), opt).value != 1) fail("oracle D(0) != 1");
    Rational prev = 2;
    for (int k = 0; k <= 8 && r.pass; ++k) {
      Rational x(k, 4);
      Rational v = oracle::deviation_sup(diamond, x, opt).value;
      if (v > prev) fail("oracle sweep not non-increasing at x=" + detail::frac(x));
      prev = v;
    }
  }
  if (r.pass) r.detail = "D(x<=0)=1 everywhere, cube vanishes beyond n/2, sweeps non-increasing";
  return r;
}

}  // namespace checks

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, bool space_given) {
  std::vector<CheckResult> results;
  results.push_back(checks::cube_oracle_agreement(cfg));
  results.push_back(checks::segments_attain_profile_minima(cfg));
  results.push_back(checks::segment_neighborhood_consistency(cfg));
  results.push_back(checks::random_lipschitz_lower_bound(cfg));
  results.push_back(checks::gaussian_structure(cfg));
  results.push_back(checks::sphere_structure(cfg));
  results.push_back(checks::boundary_laws(cfg));

  std::size_t passed = 0;
  for (const auto& r : results) {
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << "\n";
    if (r.pass) ++passed;
  }

  if (space_given) {
    // Informational verdict for an explicitly selected finite space.
    auto sel = parse_space_selector(cfg.space);
    if (sel.kind != SpaceSelector::Kind::Gauss && sel.kind != SpaceSelector::Kind::Sphere) {
      auto space = realize_space(sel, cfg.n, cfg.max_points);
      auto verdict = oracle::isoperimetric_verdict(space, {cfg.cap, cfg.workers});
      if (verdict.is_isoperimetric) {
        out << "info: " << sel.text << " (" << space.size()
            << " points) is isoperimetric: one optimal set per threshold works for every radius ("
            << verdict.witnesses.size() << " thresholds)\n";
      } else {
        const auto& ce = *verdict.counterexample;
        out << "info: " << sel.text << " (" << space.size()
            << " points) is NOT isoperimetric: at threshold " << detail::frac(ce.threshold)
            << " the minimizers at h=" << detail::frac(ce.h1) << " and h=" << detail::frac(ce.h2)
            << " differ (bits " << ce.best_at_h1.bit_string() << " vs "
            << ce.best_at_h2.bit_string() << ")\n";
      }
    }
  }

  out << "verify: " << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? kExitOk : kExitVerifyFailed;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact extremal deviation D(x) for 1-Lipschitz functions on probability metric "
               "spaces"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&cfg](CLI::App* sub, bool with_x) {
    sub->add_option("--space", cfg.space,
                    "space selector: cube|gauss|sphere|cycle|diamond|file:PATH|power:BASE^K");
    sub->add_option("-n,--dim", cfg.n, "dimension (cube, sphere) or point count (cycle)");
    if (with_x) {
      sub->add_option("-x,--x", cfg.x_list, "comma separated deviation levels (rationals or decimals)");
      sub->add_option("--x-range", cfg.x_range, "deviation level range LO:HI:STEP");
    }
    sub->add_option("--format", cfg.format, "output format: csv|md|json")
        ->check(CLI::IsMember({"csv", "md", "json"}));
    sub->add_option("--cap", cfg.cap, "enumeration cap on point count for exhaustive scans");
    sub->add_option("--max-points", cfg.max_points, "construction cap for product spaces");
    sub->add_option("--seed", cfg.seed, "seed for all randomized checks");
    sub->add_option("--trials", cfg.trials, "sampled Lipschitz functions per (space,x)");
    sub->add_option("--workers", cfg.workers, "worker threads for exhaustive scans");
    sub->add_option("--tol", cfg.tol, "tolerance for continuous-engine root finding");
  };

  auto* compute = app.add_subcommand("compute", "compute D(x) rows for a space");
  add_common(compute, true);
  auto* verify = app.add_subcommand("verify", "run the cross-check suite");
  add_common(verify, false);
  verify->add_option("--max-n", cfg.max_n, "largest cube dimension for exhaustive cross-checks")
      ->check(CLI::Range(1, 4));
  auto* profile = app.add_subcommand("profile", "exhaustive isoperimetric profile of a space");
  add_common(profile, false);
  auto* compare = app.add_subcommand("compare", "exact values next to classical bounds");
  add_common(compare, true);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("extremal");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (compute->parsed()) return cmd_compute(cfg, out, false);
    if (compare->parsed()) return cmd_compute(cfg, out, true);
    if (profile->parsed()) return cmd_profile(cfg, out);
    if (verify->parsed())
      return cmd_verify(cfg, out, verify->get_option("--space")->count() > 0);
    err << "error: no subcommand selected\n";
    return kExitConfig;
  } catch (const CapExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SpaceValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace extremal::cli
