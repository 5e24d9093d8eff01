#include "flatrange/reducible5.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "flatrange/errors.hpp"

namespace flatrange {

void Reducible5Params::validate() const {
  for (double x : {r, r1, r2, r3})
    if (!std::isfinite(x)) throw BadParams("non-finite reducible 5x5 parameter");
  if (!(r > 0.0) || !(r1 > 0.0) || !(r3 > 0.0) || !(r2 >= 0.0)) {
    throw BadParams("reducible 5x5 family needs r, r1, r3 > 0 and r2 >= 0");
  }
}

double support_distance_3x3(const Reducible5Params& p, double theta) {
  if (!(p.r1 > 0.0) || !(p.r3 > 0.0) || !(p.r2 >= 0.0)) {
    throw BadParams("3x3 block needs r1, r3 > 0 and r2 >= 0");
  }
  const double s = p.s();
  const double t = p.t();
  if (t == 0.0) return 0.5 * std::sqrt(s);
  const double arg = std::clamp(3.0 * std::sqrt(3.0) * t * std::cos(theta) / std::pow(s, 1.5), -1.0, 1.0);
  return std::sqrt(s / 3.0) * std::cos(std::acos(arg) / 3.0);
}

Complex cardioid_point(double theta) {
  return {2.0 * std::cos(theta) + std::cos(2.0 * theta), 2.0 * std::sin(theta) + std::sin(2.0 * theta)};
}

int flat_count_5x5(const Reducible5Params& p) {
  p.validate();
  if (p.r2 == 0.0) return 0;
  const double rho = p.r1;
  const double same = 1e-12 * rho;
  const bool all_equal = std::abs(p.r2 - rho) <= same && std::abs(p.r3 - rho) <= same;
  if (!all_equal) {
    const double lo = support_distance_3x3(p, std::numbers::pi);
    const double hi = support_distance_3x3(p, 0.0);
    const double half = 0.5 * p.r;
    return (lo < half && half < hi) ? 2 : 0;
  }
  if (p.r <= rho) return 1;
  if (p.r < 2.0 * rho) return 2;
  return 0;
}

CMat block_3x3(const Reducible5Params& p) {
  return CMat{{0.0, p.r1, p.r2}, {0.0, 0.0, p.r3}, {0.0, 0.0, 0.0}};
}

CMat assemble_5x5(const Reducible5Params& p) {
  p.validate();
  CMat a(5);
  a(0, 1) = p.r;
  a(2, 3) = p.r1;
  a(2, 4) = p.r2;
  a(3, 4) = p.r3;
  return a;
}

}  // namespace flatrange
