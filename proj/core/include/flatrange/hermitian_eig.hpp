#pragma once

#include <vector>

#include "flatrange/cmat.hpp"

namespace flatrange {

/// Eigen-decomposition of a Hermitian matrix.
///
/// `values` are ascending; column k of `vectors` is a unit eigenvector for
/// values[k], and the columns are orthonormal.
struct HermEig {
  std::vector<double> values;
  CMat vectors;

  CVec vector(std::size_t k) const { return vectors.column(k); }
};

inline constexpr int kMaxJacobiSweeps = 200;

/// Full eigen-decomposition. n = 1, 2 are handled in closed form, larger
/// matrices by cyclic complex Jacobi rotations.
///
/// Throws NotHermitian when ||H - H*||_F > 1e-10 (1 + ||H||_F) and
/// NoConvergence if the sweep cap is hit.
HermEig hermitian_eig(const CMat& h);

/// Eigenvalues only (ascending); same preconditions, cheaper.
std::vector<double> hermitian_eigenvalues(const CMat& h);

/// Singular values (descending) and right singular vectors via one-sided
/// Jacobi on the columns of A. Column k of `right` pairs with values[k].
struct SingularSystem {
  std::vector<double> values;
  CMat right;
};
SingularSystem singular_values(const CMat& a);

/// Orthonormal basis of the numerical kernel: right singular vectors whose
/// singular value is <= tol.
std::vector<CVec> numerical_kernel(const CMat& a, double tol);

}  // namespace flatrange
