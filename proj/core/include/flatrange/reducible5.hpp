#pragma once

#include "flatrange/cmat.hpp"

namespace flatrange {

/// A1 (+) A2 with A1 = [0 r; 0 0] and A2 = [0 r1 r2; 0 0 r3; 0 0 0].
struct Reducible5Params {
  double r = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;

  double s() const { return r1 * r1 + r2 * r2 + r3 * r3; }
  double t() const { return r1 * r2 * r3; }
  /// r, r1, r3 > 0 and r2 >= 0, all finite; BadParams otherwise.
  void validate() const;
};

/// Half the largest root of lambda^3 - s lambda - 2 t cos(theta), i.e. the
/// largest eigenvalue of Re(e^{i theta} A2), by the trigonometric cubic
/// formula. For t = 0 this is sqrt(s) / 2.
double support_distance_3x3(const Reducible5Params& p, double theta);

/// (2 cos th + cos 2th) + i (2 sin th + sin 2th).
Complex cardioid_point(double theta);

/// Number of flat portions on the boundary of F(A1 (+) A2), in {0, 1, 2}.
int flat_count_5x5(const Reducible5Params& p);

/// The 3x3 block A2.
CMat block_3x3(const Reducible5Params& p);

/// The 5x5 block-diagonal matrix A1 (+) A2.
CMat assemble_5x5(const Reducible5Params& p);

}  // namespace flatrange
