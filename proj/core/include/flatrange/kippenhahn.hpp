#pragma once

#include <array>
#include <vector>

#include "flatrange/cmat.hpp"

namespace flatrange {

/// Kippenhahn quartic of a nilpotent 4x4 matrix:
///
///   c1 u^4 + c2 u^3 v + c3 u^3 w + (c1 + c4) u^2 v^2 + c5 u^2 w^2
///   + c6 u^2 v w + c2 u v^3 + c3 u v^2 w + c4 v^4 + c6 v^3 w
///   + c5 v^2 w^2 + w^4.
///
/// Coefficients are stored real; `imag` keeps the discarded imaginary parts.
struct KippenhahnQuartic {
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0, c6 = 0.0;
  std::array<double, 6> imag{};

  double max_imag() const;
  double eval(double u, double v, double w) const;
  std::array<double, 3> gradient(double u, double v, double w) const;
};

/// Trace formulas for c1..c6. Throws NotNilpotent unless A is a nilpotent 4x4
/// matrix (DimensionError for other sizes).
KippenhahnQuartic coeffs_nilpotent4(const CMat& a);

/// Determinant by LU with partial pivoting.
Complex determinant(const CMat& m);

/// p_A(u, v, w) = det(uH + vK + wI).
double eval_general(const CMat& a, double u, double v, double w);

/// Coefficients q_0..q_n of det(wI + M) = sum_j q_j w^{n-j}, from the power
/// sums Tr(M^k) by Newton's identities. q_0 = 1, q_1 = Tr M.
std::vector<Complex> newton_coefficients(const CMat& m);

/// Real homogeneous polynomial in (u, v, w) of degree n:
/// coeff(i, j) multiplies u^i v^j w^{n-i-j}.
class HomogeneousPoly {
 public:
  explicit HomogeneousPoly(int degree);

  int degree() const noexcept { return n_; }
  double& coeff(int i, int j);
  double coeff(int i, int j) const;

  double eval(double u, double v, double w) const;
  std::array<double, 3> gradient(double u, double v, double w) const;
  /// Second derivatives in (u, v) of the gradient, at w fixed: rows are the
  /// three gradient components, columns d/du and d/dv.
  std::array<std::array<double, 2>, 3> gradient_jacobian(double u, double v, double w) const;

 private:
  int n_;
  std::vector<double> c_;  // (n+1) x (n+1), entries with i + j > n unused
};

/// The full Kippenhahn polynomial det(uH + vK + wI) of any square matrix,
/// expanded through word traces Tr(W(H, K)) and Newton's identities.
HomogeneousPoly kippenhahn_polynomial(const CMat& a);

/// The quartic as a general homogeneous polynomial.
HomogeneousPoly to_homogeneous(const KippenhahnQuartic& q);

/// Left-minus-right values of the affine (w = 1) singularity system.
std::array<double, 3> singularity_residual(const KippenhahnQuartic& q, double u, double v);

struct SingularPoint {
  double u = 0.0;
  double v = 0.0;
  double residual = 0.0;  ///< max |singularity_residual|
};

/// Real affine singular points of q = 0 with u^2 + v^2 <= radius^2.
///
/// Seeds are the local minima of the squared residual on a grid x grid
/// lattice; each is refined by damped Gauss-Newton and kept when the residual
/// drops to 1e-10 (1 + |u| + |v|)^4. Duplicates within 1e-6 are merged and
/// the result is sorted lexicographically by (u, v).
std::vector<SingularPoint> singular_points(const KippenhahnQuartic& q, double radius,
                                           int grid = 400);

/// 4 / d_min clamped to [1, 1e3], with d_min the smallest |support_value|
/// over 256 angles.
double default_search_radius(const CMat& a);

}  // namespace flatrange
