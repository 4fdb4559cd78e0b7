#pragma once

#include <random>

#include "symplecta/symplectic.hpp"

namespace symplecta::detail {

// Wraps a matrix produced by exact symplectic algebra (products, inverses,
// factorizations). The check is relative to ‖m‖²_max, which bounds the
// round-off in SᵀJS.
SymplecticMatrix computed_symplectic(const Mat& m);

// Uniform entries in [-1, 1].
Mat uniform_matrix(std::mt19937_64& rng, int rows, int cols);

// Orthogonal matrix from the QR factorization of a uniform random matrix.
Mat random_orthogonal(std::mt19937_64& rng, int n);

// Symmetric positive definite matrix with eigenvalues exp(log_spread * u),
// u uniform in [-1/2, 1/2].
Mat random_spd(std::mt19937_64& rng, int n, double log_spread);

}  // namespace symplecta::detail
