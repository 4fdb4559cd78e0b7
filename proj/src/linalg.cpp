#include "symplecta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symplecta/error.hpp"

namespace symplecta {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::contract: return "contract";
    case ErrorKind::definiteness: return "definiteness";
    case ErrorKind::degeneracy: return "degeneracy";
    case ErrorKind::domain: return "domain";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::insufficient_grid: return "insufficient_grid";
    case ErrorKind::internal: return "internal";
  }
  return "unknown";
}

Mat standard_j(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n).setIdentity();
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return j;
}

Mat symmetrize(const Mat& m) { return 0.5 * (m + m.transpose()); }

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double asymmetry(const Mat& m) { return max_abs(m - m.transpose()); }

double min_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double max_eigenvalue(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

bool is_spd(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  if (asymmetry(m) > 1e-9 * std::max(1.0, max_abs(m))) return false;
  return min_eigenvalue(m) > 0.0;
}

void require_square(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::dimension,
                std::string(what) + ": expected a non-empty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_even_square(const Mat& m, const char* what) {
  require_square(m, what);
  if (m.rows() % 2 != 0) {
    throw Error(ErrorKind::dimension,
                std::string(what) + ": phase-space matrix must have even side, got " +
                    std::to_string(m.rows()));
  }
}

void require_symmetric(const Mat& m, const char* what, double tol) {
  require_square(m, what);
  const double asym = asymmetry(m);
  if (asym > tol * std::max(1.0, max_abs(m))) {
    throw Error(ErrorKind::contract, std::string(what) + ": matrix is not symmetric",
                {{"asymmetry", asym}});
  }
}

void require_spd(const Mat& m, const char* what) {
  require_symmetric(m, what);
  const double lo = min_eigenvalue(m);
  if (!(lo > 0.0)) {
    throw Error(ErrorKind::definiteness,
                std::string(what) + ": matrix is not positive definite",
                {{"min_eigenvalue", lo}});
  }
}

namespace {

template <typename F>
Mat spectral_map(const Mat& m, F f) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(m));
  Vec d = es.eigenvalues().unaryExpr([&](double v) { return f(std::max(v, kEigenFloor)); });
  const Mat& u = es.eigenvectors();
  return symmetrize(u * d.asDiagonal() * u.transpose());
}

}  // namespace

Mat spd_sqrt(const Mat& m) {
  return spectral_map(m, [](double v) { return std::sqrt(v); });
}

Mat spd_inv_sqrt(const Mat& m) {
  return spectral_map(m, [](double v) { return 1.0 / std::sqrt(v); });
}

Mat spd_inverse(const Mat& m) {
  Eigen::LLT<Mat> llt(symmetrize(m));
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::definiteness, "spd_inverse: Cholesky factorization failed",
                {{"min_eigenvalue", min_eigenvalue(m)}});
  }
  return symmetrize(llt.solve(Mat::Identity(m.rows(), m.cols())));
}

Mat block_diag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace symplecta
