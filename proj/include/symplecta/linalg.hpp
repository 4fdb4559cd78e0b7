#pragma once

#include <Eigen/Dense>

namespace symplecta {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Eigenvalues below this floor are clamped before square roots are taken.
inline constexpr double kEigenFloor = 1e-14;

// Standard symplectic matrix ((0, I), (-I, 0)) in (x1..xn, p1..pn) order.
Mat standard_j(int n);

Mat symmetrize(const Mat& m);
double max_abs(const Mat& m);

// Largest |m - m^T| entry.
double asymmetry(const Mat& m);

// Extremal eigenvalues of the symmetric part of m.
double min_eigenvalue(const Mat& m);
double max_eigenvalue(const Mat& m);

bool is_spd(const Mat& m);

// Throw dimension error unless m is square (and of even side when requested).
void require_square(const Mat& m, const char* what);
void require_even_square(const Mat& m, const char* what);

// Throw contract error unless |m - m^T|_max <= tol * max(1, |m|_max).
void require_symmetric(const Mat& m, const char* what, double tol = 1e-9);

// Throw definiteness error (reporting the smallest eigenvalue) unless m is
// symmetric positive definite.
void require_spd(const Mat& m, const char* what);

// Matrix functions of a symmetric positive (semi)definite matrix computed by
// symmetric eigendecomposition with eigenvalues clamped at kEigenFloor.
Mat spd_sqrt(const Mat& m);
Mat spd_inv_sqrt(const Mat& m);

// Inverse of an SPD matrix through a Cholesky solve, symmetrized.
Mat spd_inverse(const Mat& m);

Mat block_diag(const Mat& a, const Mat& b);

}  // namespace symplecta
