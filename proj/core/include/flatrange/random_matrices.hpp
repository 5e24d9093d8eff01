#pragma once

#include <cstdint>
#include <random>

#include "flatrange/cmat.hpp"
#include "flatrange/reducible5.hpp"

namespace flatrange {

using Rng = std::mt19937_64;

/// Standard complex Gaussian: real and imaginary parts N(0, 1/2).
Complex complex_gaussian(Rng& rng);

/// Matrix with independent standard complex Gaussian entries.
CMat gaussian_matrix(std::size_t n, Rng& rng);

/// Haar-distributed unitary: QR of a Gaussian matrix with the phases of
/// diag(R) moved into Q.
CMat haar_unitary(std::size_t n, Rng& rng);

/// U* A U.
CMat conjugate(const CMat& a, const CMat& u);

/// Strictly upper triangular with Gaussian entries.
CMat random_strict_upper(std::size_t n, Rng& rng);

/// random_strict_upper conjugated by a Haar unitary.
CMat random_nilpotent(std::size_t n, Rng& rng);

/// Gaussian matrix (no structure).
CMat random_general(std::size_t n, Rng& rng);

/// Random Hermitian matrix (A + A*) / 2 for Gaussian A.
CMat random_hermitian(std::size_t n, Rng& rng);

/// Unitarily reducible nilpotent 4x4: a direct sum of nilpotent blocks with
/// sizes 3+1, 2+2 or 2+1+1 (chosen uniformly), conjugated by a Haar unitary.
CMat random_reducible_nilpotent4(Rng& rng);

/// Reducible 5x5 parameters: r1, r3 in (0.2, 3), r2 in [0, 3), r in (0.2, 6).
/// With probability 1/4 the three r_j are set equal.
Reducible5Params random_reducible5(Rng& rng);

/// Seed used for trial `index` of a run seeded with `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) { return seed + index; }

}  // namespace flatrange
