#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "flatrange/cmat.hpp"
#include "flatrange/nilpotent_families.hpp"
#include "flatrange/random_matrices.hpp"

namespace testing {

using namespace flatrange;

inline double max_abs_diff(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline CMat jordan(std::size_t n) {
  CMat j(n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Point of the closed unit disk, uniform in area.
inline Complex unit_disk(Rng& rng) {
  return std::polar(std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * std::numbers::pi));
}

inline ExceptionalParams random_exceptional(Rng& rng) {
  ExceptionalParams p;
  p.alpha = std::polar(uniform(rng, 0.3, 2.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
  p.a1 = unit_disk(rng);
  p.a2 = unit_disk(rng);
  p.a3 = unit_disk(rng);
  p.theta1 = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  p.theta2 = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return p;
}

/// The matrix of the worked example with an exceptional line x = -1/2 and no
/// flat portion.
inline ExceptionalParams example_params() {
  ExceptionalParams p;
  p.a1 = std::sqrt(2.0 + std::sqrt(3.0)) / 2.0;
  p.a2 = 0.5;
  p.a3 = std::sqrt(2.0) / 2.0;
  return p;
}

/// The matrix with one flat portion on x = -1/2.
inline CMat withflat() {
  const double h = std::sqrt(3.0) / 2.0;
  return CMat{{0.0, 1.0, 0.5, h}, {0.0, 0.0, 0.5, h}, {0.0, 0.0, 0.0, h}, {0.0, 0.0, 0.0, 0.0}};
}

}  // namespace testing
