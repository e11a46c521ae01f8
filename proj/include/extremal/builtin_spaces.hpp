#pragma once

#include <string>
#include <vector>

#include "extremal/space.hpp"

namespace extremal {

// Two points at unit distance, uniform weights.
inline FiniteSpace two_point_space() {
  return FiniteSpace::from_matrix({"0", "1"}, {{0, 1}, {1, 0}},
                                  {Rational(1, 2), Rational(1, 2)});
}

// The discrete cube {0,1}^n with Hamming distance and uniform weights.
// Point index equals the vertex bitmask (bit j = coordinate j).
inline FiniteSpace cube_space(int n, std::size_t max_points = 4096) {
  if (n < 1) throw std::invalid_argument("cube_space: dimension must be at least 1");
  return hamming_power(two_point_space(), static_cast<unsigned>(n), PowerMode::CountDiffering,
                       max_points);
}

// k-point cycle with hop distance min(|i-j|, k-|i-j|) and uniform weights.
inline FiniteSpace cycle_space(int k) {
  if (k < 3) throw std::invalid_argument("cycle_space: need at least 3 points");
  std::vector<std::string> labels(k);
  std::vector<std::vector<Rational>> dist(k, std::vector<Rational>(k, 0));
  std::vector<Rational> weight(k, Rational(1, k));
  for (int i = 0; i < k; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < k; ++j) {
      int gap = std::abs(i - j);
      dist[i][j] = std::min(gap, k - gap);
    }
  }
  return FiniteSpace::from_matrix(std::move(labels), std::move(dist), std::move(weight));
}

// k-point path 0-1-...-(k-1) with distance |i-j| and uniform weights.
inline FiniteSpace path_space(int k) {
  if (k < 2) throw std::invalid_argument("path_space: need at least 2 points");
  std::vector<std::string> labels(k);
  std::vector<std::vector<Rational>> dist(k, std::vector<Rational>(k, 0));
  std::vector<Rational> weight(k, Rational(1, k));
  for (int i = 0; i < k; ++i) {
    labels[i] = std::to_string(i);
    for (int j = 0; j < k; ++j) dist[i][j] = std::abs(i - j);
  }
  return FiniteSpace::from_matrix(std::move(labels), std::move(dist), std::move(weight));
}

// The diamond graph (K4 minus one edge) with shortest-path distances and
// uniform weights. Vertices 0 and 3 are the non-adjacent pair.
inline FiniteSpace diamond_space() {
  std::vector<std::vector<Rational>> dist = {
      {0, 1, 1, 2},
      {1, 0, 1, 1},
      {1, 1, 0, 1},
      {2, 1, 1, 0},
  };
  return FiniteSpace::from_matrix({"s", "a", "b", "t"}, std::move(dist),
                                  std::vector<Rational>(4, Rational(1, 4)));
}

}  // namespace extremal
