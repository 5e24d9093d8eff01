#pragma once

#include <array>
#include <optional>

#include "flatrange/cmat.hpp"
#include "flatrange/numrange.hpp"

namespace flatrange {

/// Parameters of the 4x4 nilpotent family with an exceptional supporting
/// line at angle arg(alpha), distance |alpha|/2:
///
///   alpha * [0 a1 a2 a3; 0 0 a4 a5; 0 0 0 a6; 0 0 0 0]
///   a4 = conj(a1) a2 + r1 r2 e^{i theta1}
///   a5 = conj(a1) a3 + r1 r3 e^{i theta2}
///   a6 = conj(a2) a3 + r2 r3 e^{i (theta2 - theta1)}
///
/// with r_j = sqrt(1 - |a_j|^2).
struct ExceptionalParams {
  Complex alpha{1.0, 0.0};
  Complex a1;
  Complex a2;
  Complex a3;
  double theta1 = 0.0;
  double theta2 = 0.0;

  /// r_j for j in {1, 2, 3}; moduli within 1e-12 above one count as one.
  double r(int j) const;
  double theta3() const { return theta2 - theta1; }
  const Complex& a(int j) const;

  /// Throws BadModulus if some |a_j| > 1 + 1e-12.
  void validate() const;
};

/// Strictly upper triangular 4x4 matrix, entries named a_ij.
/// In the single-index naming: a1 = a12, a2 = a13, a3 = a14, a4 = a23,
/// a5 = a24, a6 = a34.
struct UpperNilpotent4 {
  Complex a12, a13, a14, a23, a24, a34;

  /// Reads the strictly upper part; throws BadParams unless the diagonal and
  /// lower part vanish to 1e-12 (1 + ||A||_F).
  static UpperNilpotent4 from_matrix(const CMat& m);
  CMat to_matrix() const;
  /// Single-index access, j in 1..6.
  Complex a(int j) const;
};

/// G from the congruence A + A* + I ~ [1] + G for the triangular form above.
struct GramResidual {
  CMat g;
  std::array<double, 3> minors{};  ///< principal 2x2 minors (12), (13), (23)
};
GramResidual gram_residual(const UpperNilpotent4& m);

/// Explicit modulus and argument conditions for an exceptional line.
struct ExceptionalConditions {
  bool moduli_bounded = false;            ///< |a_j| <= 1, j = 1..3
  std::array<double, 3> modulus_residuals{};  ///< |lhs - rhs| of the three equations
  bool arg_vacuous = false;
  double arg_residual = 0.0;              ///< angular mismatch mod 2 pi
  bool holds(double tol = 1e-9) const;
};
ExceptionalConditions exceptional_conditions(const UpperNilpotent4& m);

/// Whether alpha * m has an exceptional supporting line (necessarily at angle
/// arg alpha). Decided through G: positive semidefinite of rank <= 1.
bool exceptional_criterion(const UpperNilpotent4& m, Complex alpha);

CMat construct_exceptional(const ExceptionalParams& p);

/// Closed-form polynomials deciding the two quadratic-form identities when
/// r1 r2 r3 != 0. Throw ZeroRadius otherwise.
Complex tau1(const ExceptionalParams& p);
Complex tau2(const ExceptionalParams& p);

/// tau2 specialised to real a_j and theta_j in {0, pi} (mod 2 pi).
Complex real_tau2(double a1, double a2, double a3, double theta1, double theta2);

enum class FlatBranch {
  TauTest,         ///< r1 r2 r3 != 0: flat unless tau1 = tau2 = 0
  R1Zero,          ///< condition (ii)
  R2Zero,          ///< condition (iii)
  R3Zero,          ///< condition (iv)
  OneZeroUnequal,  ///< exactly one r_j = 0, the other two differ: flat
  TwoOrMoreZero,   ///< at least two r_j = 0: flat
  NotApplicable,   ///< argument of a zero entry needed; answered by the oracle
  ZeroMatrix,      ///< alpha = 0
};

const char* to_string(FlatBranch b);

struct FlatVerdict {
  bool has_flat = false;
  FlatBranch branch = FlatBranch::TauTest;
};

/// Decides whether F(A) meets its exceptional line (angle arg alpha,
/// distance |alpha|/2) in a proper segment, for A = construct_exceptional(p).
FlatVerdict flat_on_line_verdict(const ExceptionalParams& p, const Tolerances& tol = {});
bool has_flat_on_line(const ExceptionalParams& p, const Tolerances& tol = {});

/// alpha * [0 a1 a2 a3; 0 0 a3 -a2; 0 0 0 a1; 0 0 0 0]; requires a1, a3 > 0
/// and alpha != 0 (BadParams otherwise).
CMat parallel_canonical(double a1, double a2, double a3, Complex alpha);

/// Result of matching a nilpotent 4x4 matrix against the parallel-flat
/// canonical form. `alpha` is unimodular; a1, a3 > 0 absorb the scale.
struct ParallelMatch {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  Complex alpha{1.0, 0.0};
  double lambda = 0.0;          ///< Im(e^{-i arg alpha} A) has eigenvalues +-lambda, double
  double invariant_residual = 0.0;  ///< worst mismatch among the checked invariants
};

/// Invariant matching for the converse direction: given a nilpotent 4x4 A and
/// the direction angle of its parallel flat portions, returns the canonical
/// parameters when Im of the rotated matrix has two double eigenvalues +-l
/// and, in the normalised triangular frame, the entries satisfy
/// a12 = a34, a14 = a23, a13 = -a24 real and A^2 = a1 a3 (E13 + E24).
std::optional<ParallelMatch> match_parallel_canonical(const CMat& a, double direction,
                                                      double tol = 1e-8);

/// [0 a1 a2 a3; 0 0 a3 a2; 0 0 0 a1; 0 0 0 0] with real entries.
CMat real_family(double a1, double a2, double a3);

/// Closed-form eigenvalues (lambda_1 .. lambda_4) of Re(e^{-i theta} A) for
/// A = real_family(a1, a2, a3); not sorted.
std::array<double, 4> real_family_eigenvalues(double a1, double a2, double a3, double theta);

/// |a1| = |a3| and |a2| >= |a1|. Throws ZeroA1 when a1 = 0.
bool real_family_vertical_flat(double a1, double a2, double a3);

}  // namespace flatrange
