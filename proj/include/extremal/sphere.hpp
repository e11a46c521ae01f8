#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>

#include "extremal/quadrature.hpp"

namespace extremal::sphere {

inline constexpr double kPi = 3.14159265358979323846;

// Quadrature cache for one ambient dimension n >= 2. The surface weight of
// the colatitude angle is w(t) = sin^{n-2}(t); caps, their measures, and
// their mean distances all reduce to integrals of w and t*w. Cumulative
// values are precomputed at Chebyshev-spaced nodes over [0, pi], so a query
// only integrates the short remainder segment.
class Geometry {
 public:
  explicit Geometry(int n, double tol = 1e-12) : n_(n), tol_(tol) {
    if (n < 2) throw std::invalid_argument("sphere geometry: dimension must be at least 2");
    nodes_.resize(kNodes + 1);
    cum_w_.resize(kNodes + 1);
    cum_tw_.resize(kNodes + 1);
    for (int j = 0; j <= kNodes; ++j)
      nodes_[j] = 0.5 * kPi * (1.0 - std::cos(kPi * j / kNodes));
    nodes_[0] = 0.0;
    nodes_[kNodes] = kPi;
    cum_w_[0] = cum_tw_[0] = 0.0;
    for (int j = 1; j <= kNodes; ++j) {
      cum_w_[j] = cum_w_[j - 1] +
                  adaptive_simpson([this](double t) { return weight(t); }, nodes_[j - 1],
                                   nodes_[j], seg_tol());
      cum_tw_[j] = cum_tw_[j - 1] +
                   adaptive_simpson([this](double t) { return t * weight(t); }, nodes_[j - 1],
                                    nodes_[j], seg_tol());
    }
  }

  int dim() const { return n_; }
  double total_weight() const { return cum_w_.back(); }

  // Normalized measure of the cap of colatitude theta.
  double cap_measure(double theta) const {
    check_domain(theta);
    double v = integral_w(theta) / total_weight();
    return v < 0 ? 0.0 : (v > 1 ? 1.0 : v);
  }

  // Mean geodesic distance to the cap: integrating the complement measure of
  // the growing cap collapses, after switching the order of integration, to
  //   m(theta) = [ (TW(pi) - TW(theta)) - theta * (Z - W(theta)) ] / Z.
  double mean_dist(double theta) const {
    check_domain(theta);
    double z = total_weight();
    double m = ((cum_tw_.back() - integral_tw(theta)) - theta * (z - integral_w(theta))) / z;
    return m < 0 ? 0.0 : m;
  }

 private:
  static constexpr int kNodes = 64;

  double seg_tol() const { return std::max(tol_, 1e-14); }

  double weight(double t) const {
    if (n_ == 2) return 1.0;
    double s = std::sin(t);
    return n_ == 3 ? s : std::pow(s, n_ - 2);
  }

  void check_domain(double theta) const {
    if (!(theta >= -1e-12 && theta <= kPi + 1e-12))
      throw std::invalid_argument("sphere: colatitude angle out of [0, pi]: " +
                                  std::to_string(theta));
  }

  double integral_w(double theta) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), theta);
    auto j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    if (j >= nodes_.size() - 1 && theta >= kPi) return cum_w_.back();
    return cum_w_[j] + adaptive_simpson([this](double t) { return weight(t); }, nodes_[j],
                                        std::min(theta, kPi), seg_tol());
  }

  double integral_tw(double theta) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), theta);
    auto j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    if (j >= nodes_.size() - 1 && theta >= kPi) return cum_tw_.back();
    return cum_tw_[j] + adaptive_simpson([this](double t) { return t * weight(t); }, nodes_[j],
                                         std::min(theta, kPi), seg_tol());
  }

  int n_;
  double tol_;
  std::vector<double> nodes_, cum_w_, cum_tw_;
};

// Shared per-dimension cache; geometries are immutable once built.
inline const Geometry& geometry(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Geometry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<Geometry>(n);
  return *slot;
}

inline double cap_measure(int n, double theta) { return geometry(n).cap_measure(theta); }
inline double cap_mean_dist(int n, double theta) { return geometry(n).mean_dist(theta); }

struct Witness {
  int n = 2;
  double x = 0;
  double theta_star = 0;
  double value = 0;
  bool feasible = true;  // false when x exceeds the mean distance to a point
};

// Objective over the cap family: mu(C_{theta + m(theta) - x}), with the
// radius clamped at pi; zero when m(theta) < x.
inline double cap_objective(int n, double theta, double x) {
  const auto& g = geometry(n);
  double m = g.mean_dist(theta);
  if (m < x) return 0.0;
  double r = theta + (m - x);
  return g.cap_measure(r > kPi ? kPi : r);
}

// D(x) on the sphere S^{n-1}: caps are the extremal sets, the optimal cap
// angle solves m(theta*) = x, and the attained value is the cap measure at
// theta*. x <= 0 gives 1 (full sphere); x beyond the mean distance to a
// point (m at theta -> 0) makes every cap infeasible and D = 0.
inline Witness deviation_sup(int n, double x, double tol = 1e-12) {
  const auto& g = geometry(n);
  if (x <= 0) return {n, x, kPi, 1.0, true};
  double m0 = g.mean_dist(0.0);
  if (x > m0) return {n, x, 0.0, 0.0, false};

  double lo = 0.0, hi = kPi;  // m(lo) >= x >= m(hi)
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    double m = g.mean_dist(mid);
    if (std::fabs(m - x) <= tol || hi - lo < 1e-14) break;
    if (m > x)
      lo = mid;
    else
      hi = mid;
  }
  return {n, x, mid, g.cap_measure(mid), true};
}

// Self-contained analytic references for the circle and the 2-sphere,
// used to cross-check the quadrature path.
//   n=2: m(theta) = (pi-theta)^2 / (2 pi),  D(x) = 1 - sqrt(2x/pi)
//   n=3: m(theta) = (pi - theta - sin theta)/2,  cap measure (1 - cos theta)/2
inline std::optional<double> closed_form_deviation(int n, double x) {
  if (n == 2) {
    if (x <= 0) return 1.0;
    if (x > 0.5 * kPi) return 0.0;
    return 1.0 - std::sqrt(2.0 * x / kPi);
  }
  if (n == 3) {
    if (x <= 0) return 1.0;
    if (x > 0.5 * kPi) return 0.0;
    auto m3 = [](double theta) { return 0.5 * (kPi - theta - std::sin(theta)); };
    double lo = 0.0, hi = kPi, mid = 0.5 * kPi;
    for (int it = 0; it < 200; ++it) {
      mid = 0.5 * (lo + hi);
      double m = m3(mid);
      if (std::fabs(m - x) <= 1e-15 || hi - lo < 1e-15) break;
      if (m > x)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (1.0 - std::cos(mid));
  }
  return std::nullopt;
}

}  // namespace extremal::sphere
