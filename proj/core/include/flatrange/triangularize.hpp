#pragma once

#include "flatrange/cmat.hpp"

namespace flatrange {

struct Triangularization {
  CMat q;  ///< unitary
  CMat t;  ///< strictly upper triangular, Q* A Q = T
};

/// True when ||A^n||_F <= 1e-8 (1 + ||A||_F)^n.
bool is_nilpotent(const CMat& a);

/// Unitary triangularisation of a nilpotent matrix.
///
/// Column k of Q is a null vector of the compression of A onto the orthogonal
/// complement of the previous columns, so span(q_1..q_k) follows the flag
/// ker A, ker A^2, ... . The returned T has its diagonal and lower part set
/// to zero after the residual check.
///
/// Throws NotNilpotent when the precondition fails or the residual below the
/// diagonal exceeds 1e-10 (1 + ||A||_F).
Triangularization nilpotent_triangularize(const CMat& a);

/// Diagonal unitary similarity D* T D making the first superdiagonal real and
/// non-negative. Moduli of all entries are preserved.
CMat normalize_superdiagonal(const CMat& t);

/// The diagonal unitary used by normalize_superdiagonal (as its diagonal).
CVec superdiagonal_phases(const CMat& t);

/// n x n unitary whose first column is the unit vector u (Householder).
CMat complete_to_unitary(std::span<const Complex> u);

}  // namespace flatrange
