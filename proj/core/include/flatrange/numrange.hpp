#pragma once

#include <numbers>
#include <vector>

#include "flatrange/cmat.hpp"

namespace flatrange {

/// Tolerance knobs for the numerical-range oracle. The multiplicity and
/// flatness thresholds are relative: the absolute value used is
/// `rel * (1 + ||A||_F)`.
struct Tolerances {
  double mult = 1e-8;   ///< eigenvalue coincidence
  double flat = 1e-7;   ///< minimum flat-portion length
  int scan = 2048;      ///< angle grid for the gap scan

  double eps_mult(const CMat& a) const { return mult * (1.0 + a.frobenius_norm()); }
  double eps_flat(const CMat& a) const { return flat * (1.0 + a.frobenius_norm()); }
};

/// Wrap an angle into [0, 2 pi).
double canonical_angle(double theta);

/// Distance between two angles on the circle, in [0, pi].
double angle_distance(double a, double b);

/// The line { z : Re(e^{-i theta} z) = d }; F(A) lies where Re(e^{-i theta} z) >= d.
struct SupportLine {
  double theta = 0.0;
  double d = 0.0;

  /// Line coordinates (u, v) with the line written as u x + v y + 1 = 0.
  /// Requires d != 0.
  std::pair<double, double> line_coordinates() const;
};

struct FlatPortion {
  SupportLine line;
  Complex z1;
  Complex z2;
  double length = 0.0;
};

/// Eigenspace of the minimal eigenvalue of Re(e^{-i theta} A) at an
/// exceptional angle. `basis` has at least two orthonormal vectors.
struct ExceptionalSubspace {
  double theta = 0.0;
  double min_eigenvalue = 0.0;
  double gap = 0.0;  ///< lambda_2 - lambda_1 at theta
  std::vector<CVec> basis;
};

/// lambda_min(Re(e^{-i theta} A)).
double support_value(const CMat& a, double theta);

/// <Ax, x> for a unit eigenvector x of the minimal eigenvalue of
/// Re(e^{-i theta} A).
Complex boundary_point(const CMat& a, double theta);

/// boundary_point at n uniformly spaced angles theta_k = 2 pi k / n.
std::vector<Complex> sample_boundary(const CMat& a, int n_samples);

/// True when F(A) has empty interior: all sampled boundary points lie on one
/// line within 1e-10 (1 + ||A||_F).
bool is_degenerate_range(const CMat& a, int n_samples = 64);

/// Angles where the minimal eigenvalue of Re(e^{-i theta} A) is multiple.
///
/// The gap lambda_2 - lambda_1 is scanned on `tol.scan` angles, every local
/// minimum is refined by golden-section search and kept when its gap is
/// below eps_mult. Results are sorted by angle. Throws DegenerateRange when
/// F(A) has empty interior.
std::vector<ExceptionalSubspace> exceptional_angles(const CMat& a, const Tolerances& tol = {});

/// Whether the compression of A onto span{y1, y2} is a scalar multiple of the
/// identity, tested through the two quadratic-form identities
///   <Ay1,y1> |y2|^2 = <Ay2,y2> |y1|^2,
///   <Ay2,y1> |y1|^2 = <y2,y1> <Ay1,y1>.
/// Throws DependentVectors when the normalised Gram determinant is <= 1e-12.
bool compression_is_scalar(const CMat& a, const CVec& y1, const CVec& y2);

/// Segment F(A) cap (support line) at an exceptional angle, from the extreme
/// eigenvalues of the compression of Im(e^{-i theta} A) onto the eigenspace.
FlatPortion segment_at(const CMat& a, const ExceptionalSubspace& ex);

/// All flat portions on the boundary of F(A), sorted by angle.
std::vector<FlatPortion> flat_portions(const CMat& a, const Tolerances& tol = {});

/// Flat portions together with the exceptional angles they were drawn from.
struct RangeAnalysis {
  std::vector<ExceptionalSubspace> exceptional;
  std::vector<FlatPortion> flats;
};
RangeAnalysis analyze_range(const CMat& a, const Tolerances& tol = {});

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace flatrange
