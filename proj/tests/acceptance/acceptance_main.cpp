// Acceptance suite: runs every contract criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exits nonzero if any fails.
//
//   acceptance --cli /path/to/extremal   (the CLI path is needed by criterion 7)

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "extremal/builtin_spaces.hpp"
#include "extremal/cube.hpp"
#include "extremal/gaussian.hpp"
#include "extremal/oracle.hpp"
#include "extremal/sphere.hpp"

using namespace extremal;

namespace {

struct Criterion {
  int id;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

Rational q(long long n, long long d = 1) { return Rational(Int(n), Int(d)); }

// --- criterion 1: sampled Lipschitz functions never beat the supremum -----

Criterion criterion_sampled_bounds() {
  Criterion c{1, "sampled Lipschitz functions vs the exhaustive supremum"};
  const std::uint64_t kTrials = 10000;
  std::mt19937_64 space_rng(20240811);
  std::size_t spaces_checked = 0, pairs = 0;
  for (int s = 0; s < 20; ++s) {
    auto space = oracle::random_metric_space(space_rng, 2, 10);
    ++spaces_checked;
    Rational max_mean = 0;
    for (std::size_t u = 0; u < space.size(); ++u) {
      Rational m = mean_dist(space, SubsetRef::from_indices(space.size(), {u}));
      if (m > max_mean) max_mean = m;
    }
    for (int j = 0; j < 8; ++j) {
      Rational x = max_mean * q(j, 7);
      auto report = oracle::random_lipschitz_check(space, x, kTrials,
                                                   911u + 131 * s + 17u * j);
      ++pairs;
      if (!report.ok) {
        c.detail = "space " + std::to_string(s) + " (" + std::to_string(space.size()) +
                   " points), x=" + to_fraction_string(x) + ": max sampled " +
                   to_fraction_string(report.max_sampled) + " vs supremum " +
                   to_fraction_string(report.oracle_value) +
                   (report.witness_attains ? "" : "; witness fails to attain");
        return c;
      }
    }
  }
  c.pass = true;
  c.detail = std::to_string(spaces_checked) + " random spaces x 8 levels, " +
             std::to_string(kTrials) + " samples each: none exceeded the supremum and every "
             "negated-distance witness attained it exactly";
  return c;
}

// --- criterion 2: segments vs enumeration on cubes up to n = 4 ------------

Criterion criterion_cube_desk_scale() {
  Criterion c{2, "cube initial segments vs exhaustive enumeration (n <= 4)"};
  std::size_t cells = 0, points = 0;
  for (int n = 1; n <= 4; ++n) {
    auto space = cube_space(n);
    cube::SegmentEngine engine(n);
    oracle::Options opt{16, 1};
    auto prof = oracle::profile(space, opt);
    const auto full = engine.vertex_count();
    for (std::uint64_t k = 1; k <= full; ++k) {
      for (std::size_t l = 0; l < prof.radii.size(); ++l) {
        ++cells;
        Rational seg(Int(engine.iterated_rank(k, static_cast<std::int64_t>(l))), Int(full));
        if (seg != prof.cell(k, l).min_measure) {
          c.detail = "segment not extremal at n=" + std::to_string(n) + ", k=" +
                     std::to_string(k) + ", h=" + std::to_string(l);
          return c;
        }
      }
    }
    for (int k = 0; k <= 8 * n; ++k) {
      Rational x(Int(k), Int(8));
      ++points;
      if (engine.deviation_sup(x).value != oracle::deviation_sup(space, x, opt).value) {
        c.detail = "D mismatch at n=" + std::to_string(n) + ", x=" + to_fraction_string(x);
        return c;
      }
    }
  }
  c.pass = true;
  c.detail = std::to_string(cells) + " profile cells attained by initial segments and " +
             std::to_string(points) + " grid values equal, both exactly";
  return c;
}

// --- criterion 3: gaussian closed structure --------------------------------

Criterion criterion_gaussian() {
  Criterion c{3, "gaussian half-space structure"};
  if (std::fabs(gauss::partial_expectation(0.0) - gauss::kInvSqrt2Pi) > 1e-12) {
    c.detail = "m(0) differs from 1/sqrt(2 pi) beyond 1e-12";
    return c;
  }
  double d_half = gauss::deviation_sup(gauss::kInvSqrt2Pi).value;
  if (std::fabs(d_half - 0.5) > 1e-10) {
    c.detail = "D(1/sqrt(2 pi)) = " + std::to_string(d_half) + ", expected 1/2 within 1e-10";
    return c;
  }
  for (double x : {0.1, 0.5, 1.0, 2.0}) {
    auto g = gauss::grid_check(x);
    if (!g.ok) {
      c.detail = "grid check failed at x = " + std::to_string(x);
      return c;
    }
  }
  auto mc = gauss::monte_carlo_check(1.0, 1000000, 424242);
  if (!mc.ok) {
    std::ostringstream os;
    os << "Monte Carlo frequency " << mc.freq << " vs " << mc.event_prob << " beyond 3 sigma ("
       << mc.sigma << ")";
    c.detail = os.str();
    return c;
  }
  c.pass = true;
  std::ostringstream os;
  os << "m(0) and the half root exact to tolerance, 4 grid checks pass, 1e6-sample Monte Carlo "
        "within "
     << std::fabs(mc.freq - mc.event_prob) / mc.sigma << " sigma";
  c.detail = os.str();
  return c;
}

// --- criterion 4: sphere closed forms and the cycle limit ------------------

Criterion criterion_sphere() {
  Criterion c{4, "sphere closed forms and the discrete cycle limit"};
  const double pi = sphere::kPi;
  double worst_circle = 0, worst_two_paths = 0, worst_cycle = 0;
  auto cycle12 = cycle_space(12);
  for (int i = 1; i <= 20; ++i) {
    double x = 0.5 * pi * i / 21.0;
    double quad = sphere::deviation_sup(2, x).value;
    worst_circle = std::max(worst_circle, std::fabs(quad - (1.0 - std::sqrt(2.0 * x / pi))));
    double quad3 = sphere::deviation_sup(3, x).value;
    worst_two_paths = std::max(worst_two_paths,
                               std::fabs(quad3 - *sphere::closed_form_deviation(3, x)));
    Rational scaled = rational_from_double(x * 12.0 / (2.0 * pi));
    double cyc = to_double(oracle::deviation_sup(cycle12, scaled).value);
    worst_cycle = std::max(worst_cycle, std::fabs(cyc - quad));
  }
  if (worst_circle > 1e-9) {
    c.detail = "circle closed-form gap " + std::to_string(worst_circle) + " exceeds 1e-9";
    return c;
  }
  if (worst_two_paths > 1e-9) {
    c.detail = "2-sphere path disagreement " + std::to_string(worst_two_paths) + " exceeds 1e-9";
    return c;
  }
  if (worst_cycle > 0.15) {
    c.detail = "12-cycle gap " + std::to_string(worst_cycle) + " exceeds 0.15";
    return c;
  }
  c.pass = true;
  std::ostringstream os;
  os << "20-point grid: circle gap " << worst_circle << ", 2-sphere path gap " << worst_two_paths
     << ", 12-cycle gap " << worst_cycle;
  c.detail = os.str();
  return c;
}

// --- criterion 5: classical bounds dominate --------------------------------

Criterion criterion_domination() {
  Criterion c{5, "classical bounds dominate the exact values"};
  for (int n = 1; n <= 10; ++n) {
    cube::SegmentEngine engine(n);
    for (Rational x = 0; x <= q(n, 2) + q(1, 2); x += q(1, 4)) {
      Rational exact = engine.deviation_sup(x).value;
      Rational bound = rational_from_double(cube::mcdiarmid_bound(n, to_double(x)));
      if (exact > bound) {
        c.detail = "cube n=" + std::to_string(n) + ", x=" + to_fraction_string(x) +
                   ": exact " + to_fraction_string(exact) + " exceeds exp(-2x^2/n)";
        return c;
      }
    }
  }
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    if (gauss::deviation_sup(x).value > gauss::tail_bound(x) + 1e-12) {
      c.detail = "gauss x=" + std::to_string(x) + ": exact exceeds exp(-x^2/2) + 1e-12";
      return c;
    }
  }
  c.pass = true;
  c.detail = "cube n<=10 on the quarter grid (exact rational compare) and gauss at "
             "{0.5,1,2,4} within 1e-12";
  return c;
}

// --- criterion 6: boundary laws and monotone sweeps ------------------------

Criterion criterion_boundaries() {
  Criterion c{6, "boundary laws and monotone sweeps"};
  for (int n = 1; n <= 10; ++n) {
    cube::SegmentEngine engine(n);
    if (engine.deviation_sup(q(0)).value != 1 || engine.deviation_sup(q(-1, 3)).value != 1) {
      c.detail = "cube D(x<=0) != 1 at n=" + std::to_string(n);
      return c;
    }
    if (engine.deviation_sup(q(n, 2) + q(1, 8)).value != 0) {
      c.detail = "cube D not exactly 0 beyond n/2 at n=" + std::to_string(n);
      return c;
    }
    Rational prev = 2;
    for (Rational x = q(-1, 2); x <= q(n, 2) + q(1, 2); x += q(1, 4)) {
      Rational v = engine.deviation_sup(x).value;
      if (v > prev) {
        c.detail = "cube sweep increases at n=" + std::to_string(n);
        return c;
      }
      prev = v;
    }
  }
  if (gauss::deviation_sup(0.0).value != 1.0 || gauss::deviation_sup(-2.0).value != 1.0) {
    c.detail = "gauss D(x<=0) != 1";
    return c;
  }
  {
    double prev = 2;
    for (double x = -0.5; x <= 4.0; x += 0.1) {
      double v = gauss::deviation_sup(x).value;
      if (v > prev + 1e-12) {
        c.detail = "gauss sweep increases";
        return c;
      }
      prev = v;
    }
  }
  for (int n : {2, 3, 5}) {
    if (sphere::deviation_sup(n, 0.0).value != 1.0 || sphere::deviation_sup(n, -1.0).value != 1.0) {
      c.detail = "sphere D(x<=0) != 1 at n=" + std::to_string(n);
      return c;
    }
    double prev = 2;
    for (double x = -0.25; x <= 1.8; x += 0.05) {
      double v = sphere::deviation_sup(n, x).value;
      if (v > prev + 1e-12) {
        c.detail = "sphere sweep increases at n=" + std::to_string(n);
        return c;
      }
      prev = v;
    }
  }
  for (const auto& space : {diamond_space(), cycle_space(6)}) {
    if (oracle::deviation_sup(space, q(0)).value != 1 ||
        oracle::deviation_sup(space, q(-1, 2)).value != 1) {
      c.detail = "enumeration D(x<=0) != 1";
      return c;
    }
    Rational prev = 2;
    for (Rational x = q(-1, 2); x <= q(3); x += q(1, 4)) {
      Rational v = oracle::deviation_sup(space, x).value;
      if (v > prev) {
        c.detail = "enumeration sweep increases";
        return c;
      }
      prev = v;
    }
  }
  c.pass = true;
  c.detail = "D(x<=0)=1 on all four engines, cube vanishes exactly beyond n/2 (n<=10), every "
             "sweep non-increasing";
  return c;
}

// --- criterion 7: byte-identical verify across worker counts ---------------

std::string capture(const std::string& command, int& exit_code) {
  std::string output;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return output;
  }
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  exit_code = pclose(pipe);
  return output;
}

Criterion criterion_determinism(const std::string& cli_path) {
  Criterion c{7, "verify is byte-identical across worker counts"};
  if (cli_path.empty()) {
    c.detail = "no --cli path given";
    return c;
  }
  std::string base = "'" + cli_path + "' verify --seed 20240811 --trials 1000 --max-n 3";
  int code1 = 0, code2 = 0;
  std::string out1 = capture(base + " --workers 1", code1);
  std::string out2 = capture(base + " --workers 2", code2);
  if (code1 != 0 || code2 != 0) {
    c.detail = "verify exited nonzero (" + std::to_string(code1) + ", " + std::to_string(code2) +
               ")";
    return c;
  }
  if (out1 != out2) {
    c.detail = "outputs differ between --workers 1 and --workers 2";
    return c;
  }
  c.pass = true;
  c.detail = std::to_string(out1.size()) + " bytes identical, both runs exit 0";
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli_path;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli_path = argv[i + 1];

  std::vector<Criterion> results;
  auto run = [&results](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    Criterion c = fn();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(c);
    std::printf("[%s] criterion %d: %s — %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.id,
                c.title.c_str(), c.detail.c_str(), c.seconds);
    std::fflush(stdout);
  };

  run(criterion_sampled_bounds);
  run(criterion_cube_desk_scale);
  run(criterion_gaussian);
  run(criterion_sphere);
  run(criterion_domination);
  run(criterion_boundaries);
  run([&] { return criterion_determinism(cli_path); });

  std::size_t passed = 0;
  for (const auto& c : results)
    if (c.pass) ++passed;
  std::printf("acceptance: %zu/%zu criteria passed\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}
