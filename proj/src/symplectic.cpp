#include "symplecta/symplectic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "detail.hpp"
#include "symplecta/error.hpp"

namespace symplecta {

Check is_symplectic(const Mat& s, double tol) {
  require_even_square(s, "is_symplectic");
  const int n = static_cast<int>(s.rows() / 2);
  const Mat j = standard_j(n);
  const double residual = max_abs(s.transpose() * j * s - j);
  return {residual <= tol, residual};
}

SymplecticMatrix SymplecticMatrix::from_matrix(Mat m, double tol) {
  const Check check = is_symplectic(m, tol);
  if (!check) {
    throw Error(ErrorKind::contract, "matrix is not symplectic",
                {{"residual", check.residual}, {"tol", tol}});
  }
  return SymplecticMatrix(std::move(m));
}

SymplecticMatrix SymplecticMatrix::identity(int n) {
  if (n < 1) throw Error(ErrorKind::dimension, "identity: n must be positive");
  return SymplecticMatrix(Mat::Identity(2 * n, 2 * n));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.n() != n()) throw Error(ErrorKind::dimension, "symplectic product: size mismatch");
  return detail::computed_symplectic(m_ * rhs.m_);
}

namespace detail {

SymplecticMatrix computed_symplectic(const Mat& m) {
  const double scale = std::max(1.0, max_abs(m));
  return SymplecticMatrix::from_matrix(m, 1e-9 * scale * scale);
}

Mat uniform_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Mat out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) out(i, k) = dist(rng);
  return out;
}

Mat random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::HouseholderQR<Mat> qr(uniform_matrix(rng, n, n));
  return qr.householderQ() * Mat::Identity(n, n);
}

Mat random_spd(std::mt19937_64& rng, int n, double log_spread) {
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  const Mat q = random_orthogonal(rng, n);
  Vec d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(log_spread * dist(rng));
  return symmetrize(q * d.asDiagonal() * q.transpose());
}

}  // namespace detail

Mat shear_matrix(const Mat& p) {
  require_square(p, "shear_matrix");
  const auto n = p.rows();
  Mat v = Mat::Identity(2 * n, 2 * n);
  v.bottomLeftCorner(n, n) = -p;
  return v;
}

Mat dilation_matrix(const Mat& l) {
  require_square(l, "dilation_matrix");
  const auto n = l.rows();
  Eigen::FullPivLU<Mat> lu(l);
  if (!lu.isInvertible()) throw Error(ErrorKind::contract, "dilation_matrix: L is singular");
  Mat m = Mat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = lu.inverse();
  m.bottomRightCorner(n, n) = l.transpose();
  return m;
}

Generator Generator::fourier(int n) {
  if (n < 1) throw Error(ErrorKind::dimension, "generator: n must be positive");
  return {Kind::fourier, n, Mat()};
}

Generator Generator::dilation(Mat l) {
  require_square(l, "dilation generator");
  if (std::abs(l.determinant()) == 0.0 || !Eigen::FullPivLU<Mat>(l).isInvertible()) {
    throw Error(ErrorKind::contract, "dilation generator: L is singular");
  }
  const int n = static_cast<int>(l.rows());
  return {Kind::dilation, n, std::move(l)};
}

Generator Generator::shear(Mat p) {
  require_symmetric(p, "shear generator");
  const int n = static_cast<int>(p.rows());
  return {Kind::shear, n, symmetrize(p)};
}

SymplecticMatrix Generator::matrix() const {
  switch (kind) {
    case Kind::fourier: return SymplecticMatrix::from_matrix(standard_j(n));
    case Kind::dilation: return detail::computed_symplectic(dilation_matrix(block));
    case Kind::shear: return detail::computed_symplectic(shear_matrix(block));
  }
  throw Error(ErrorKind::internal, "generator: unknown kind");
}

SymplecticMatrix symplectic_inverse(const SymplecticMatrix& s) {
  const int n = s.n();
  Mat inv(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = s.d().transpose();
  inv.topRightCorner(n, n) = -s.b().transpose();
  inv.bottomLeftCorner(n, n) = -s.c().transpose();
  inv.bottomRightCorner(n, n) = s.a().transpose();
  return detail::computed_symplectic(inv);
}

Mat PreIwasawaFactors::reconstruct() const {
  return shear_matrix(-p) * dilation_matrix(l) * r.matrix();
}

PreIwasawaFactors pre_iwasawa(const SymplecticMatrix& s) {
  const Mat a = s.a(), b = s.b(), c = s.c(), d = s.d();
  const Mat gram = symmetrize(a * a.transpose() + b * b.transpose());
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success || !(min_eigenvalue(gram) > 0.0)) {
    throw Error(ErrorKind::internal, "pre_iwasawa: AAᵀ + BBᵀ is singular for a symplectic input",
                {{"min_eigenvalue", min_eigenvalue(gram)}});
  }
  const Mat l = spd_inv_sqrt(gram);
  const Mat p_raw = (c * a.transpose() + d * b.transpose()) * llt.solve(Mat::Identity(s.n(), s.n()));
  const Mat e = l * a;
  const Mat f = l * b;
  const int n = s.n();
  Mat r(2 * n, 2 * n);
  r << e, f, -f, e;
  return {symmetrize(p_raw), l, detail::computed_symplectic(r), asymmetry(p_raw)};
}

namespace {

struct SkewSpectrum {
  Vec lambdas;     // descending, positive
  Mat real_parts;  // columns: Re u_j
  Mat imag_parts;  // columns: Im u_j
};

// Diagonalizes the Hermitian matrix iK for skew-symmetric K. Its spectrum is
// ±λ_j; eigenvectors of the positive half give K-invariant orthonormal planes.
SkewSpectrum skew_spectrum(const Mat& k, bool vectors) {
  using CMat = Eigen::MatrixXcd;
  const auto dim = k.rows();
  const int n = static_cast<int>(dim / 2);
  const CMat h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMat> es(h, vectors ? Eigen::ComputeEigenvectors
                                                     : Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();  // ascending
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  SkewSpectrum out;
  out.lambdas.resize(n);
  for (int j = 0; j < n; ++j) {
    const double hi = ev(dim - 1 - j);
    const double lo = ev(j);
    if (std::abs(hi + lo) > 1e-9 * scale) {
      throw Error(ErrorKind::internal, "symplectic spectrum: eigenvalues of iK do not pair as ±λ",
                  {{"positive", hi}, {"negative", lo}});
    }
    out.lambdas(j) = 0.5 * (hi - lo);
  }
  if (vectors) {
    out.real_parts.resize(dim, n);
    out.imag_parts.resize(dim, n);
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXcd u = es.eigenvectors().col(dim - 1 - j);
      out.real_parts.col(j) = u.real();
      out.imag_parts.col(j) = u.imag();
    }
  }
  return out;
}

}  // namespace

Vec symplectic_eigenvalues(const Mat& m) {
  require_even_square(m, "symplectic_eigenvalues");
  require_spd(m, "symplectic_eigenvalues");
  const int n = static_cast<int>(m.rows() / 2);
  const Mat root = spd_sqrt(m);
  const Mat k = root * standard_j(n) * root;
  return skew_spectrum(0.5 * (k - k.transpose()), false).lambdas;
}

WilliamsonForm williamson(const Mat& m) {
  require_even_square(m, "williamson");
  require_spd(m, "williamson");
  const int n = static_cast<int>(m.rows() / 2);
  const Mat root = spd_sqrt(m);
  const Mat k = root * standard_j(n) * root;
  const SkewSpectrum sp = skew_spectrum(0.5 * (k - k.transpose()), true);

  // With K a = λ b and K b = −λ a, the columns √2 [Im u | Re u] form an
  // orthogonal O with Oᵀ K O = ((0, Λ), (−Λ, 0)).
  Mat o(2 * n, 2 * n);
  o << std::sqrt(2.0) * sp.imag_parts, std::sqrt(2.0) * sp.real_parts;
  Vec diag(2 * n);
  diag << sp.lambdas, sp.lambdas;
  const Mat s = spd_inv_sqrt(m) * o * diag.cwiseSqrt().asDiagonal();
  const double residual = max_abs(s.transpose() * m * s - Mat(diag.asDiagonal()));
  return {detail::computed_symplectic(s), sp.lambdas, residual};
}

SymplecticMatrix random_symplectic(std::uint64_t seed, int n, double spread) {
  if (n < 1) throw Error(ErrorKind::dimension, "random_symplectic: n must be positive");
  if (spread < 0.0) throw Error(ErrorKind::domain, "random_symplectic: spread must be >= 0");
  std::mt19937_64 rng(seed);
  const Mat j = standard_j(n);
  Mat s = Mat::Identity(2 * n, 2 * n);
  for (int round = 0; round < 4; ++round) {
    const Mat p = symmetrize(0.5 * spread * detail::uniform_matrix(rng, n, n));
    const Mat l = detail::random_spd(rng, n, spread);
    s = s * shear_matrix(-p) * dilation_matrix(l) * j;
  }
  return detail::computed_symplectic(s);
}

}  // namespace symplecta
