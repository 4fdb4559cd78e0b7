#include "symplecta/blobs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "detail.hpp"
#include "symplecta/error.hpp"

namespace symplecta {

namespace {

double relative_symplectic_tol(const Mat& m, double tol) {
  const double scale = std::max(1.0, max_abs(m));
  return tol * scale * scale;
}

Mat schur_complement(const Mat& m, bool keep_x) {
  const int n = static_cast<int>(m.rows() / 2);
  const Mat xx = m.topLeftCorner(n, n), xp = m.topRightCorner(n, n);
  const Mat px = m.bottomLeftCorner(n, n), pp = m.bottomRightCorner(n, n);
  if (keep_x) return symmetrize(xx - xp * spd_inverse(pp) * px);
  return symmetrize(pp - px * spd_inverse(xx) * xp);
}

}  // namespace

PhaseEllipsoid PhaseEllipsoid::make(Mat m, double hbar) {
  require_even_square(m, "phase ellipsoid");
  require_spd(m, "phase ellipsoid");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "phase ellipsoid: hbar must be positive");
  return {symmetrize(m), hbar};
}

double PhaseEllipsoid::volume() const {
  const int dim = static_cast<int>(m.rows());
  return ball_volume(dim, std::sqrt(hbar)) / std::sqrt(m.determinant());
}

std::pair<EllipsoidBody, EllipsoidBody> project_ellipsoid(const PhaseEllipsoid& e) {
  require_even_square(e.m, "project_ellipsoid");
  return {EllipsoidBody::make(Space::position, schur_complement(e.m, true), e.hbar),
          EllipsoidBody::make(Space::momentum, schur_complement(e.m, false), e.hbar)};
}

QuantumBlob QuantumBlob::from_form(Mat g, double hbar, double tol) {
  require_even_square(g, "quantum blob");
  require_spd(g, "quantum blob");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "quantum blob: hbar must be positive");
  const Check check = is_symplectic(g, relative_symplectic_tol(g, tol));
  if (!check) {
    throw Error(ErrorKind::contract, "quantum blob: G is not symplectic",
                {{"residual", check.residual}});
  }
  return QuantumBlob(symmetrize(g), hbar, std::nullopt);
}

double QuantumBlob::volume() const {
  return ball_volume(2 * n(), std::sqrt(hbar_)) / std::sqrt(g_.determinant());
}

double blob_volume(int n, double hbar) {
  return std::pow(std::numbers::pi * hbar, n) / std::tgamma(n + 1.0);
}

QuantumBlob blob_from_symplectic(const SymplecticMatrix& s, double hbar) {
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "blob: hbar must be positive");
  const Mat s_inv = symplectic_inverse(s).matrix();
  return QuantumBlob(symmetrize(s_inv.transpose() * s_inv), hbar, s);
}

BlobNormalForm blob_normal_form(const QuantumBlob& blob) {
  // For any generator S, SSᵀ = G⁻¹ has blocks (AAᵀ + BBᵀ, ·; CAᵀ + DBᵀ, ·), so
  // the pre-Iwasawa factors can be read off G⁻¹ without choosing S.
  const int n = blob.n();
  const Mat cov = spd_inverse(blob.g());
  const Mat gram = cov.topLeftCorner(n, n);
  const Mat cross = cov.bottomLeftCorner(n, n);
  return {symmetrize(cross * spd_inverse(gram)), spd_inv_sqrt(gram)};
}

BlobProjections project_blob(const QuantumBlob& blob, double tol) {
  const int n = blob.n();
  auto [x, p] = project_ellipsoid(blob.ellipsoid());
  const double off = max_abs(blob.g().topRightCorner(n, n));
  BlobProjections out{x, p, off <= tol * std::max(1.0, max_abs(blob.g())), {}};
  out.pair = quantum_pair_check(out.x, out.p, tol);
  return out;
}

JohnOfPair john_of_pair(const EllipsoidBody& x, const EllipsoidBody& p) {
  if (x.dim() != p.dim()) throw Error(ErrorKind::dimension, "john_of_pair: dimension mismatch");
  if (x.space != Space::position || p.space != Space::momentum) {
    throw Error(ErrorKind::contract, "john_of_pair: expected a position body and a momentum body");
  }
  if (std::abs(x.hbar - p.hbar) > 1e-12 * std::max(x.hbar, p.hbar)) {
    throw Error(ErrorKind::contract, "john_of_pair: bodies carry different hbar");
  }
  const Mat m = block_diag(x.q, p.q);
  const Check check = is_symplectic(m, relative_symplectic_tol(m, 1e-9));
  return {PhaseEllipsoid::make(m, x.hbar), check.holds, check.residual};
}

JohnSolution john_of_polytope_product(const PolytopeBody& x, const PolytopeBody& p,
                                      const JohnSolverOptions& options) {
  if (x.dim() != p.dim()) {
    throw Error(ErrorKind::dimension, "john_of_polytope_product: dimension mismatch");
  }
  if (x.dim() > 2) {
    throw Error(ErrorKind::dimension, "john_of_polytope_product: limited to n <= 2");
  }
  const int n = x.dim();
  const int d = 2 * n;

  // Facets of X × P: (a, 0) and (0, b).
  std::vector<Vec> facets;
  for (const Vec& a : x.normals()) {
    Vec f = Vec::Zero(d);
    f.head(n) = a;
    facets.push_back(f);
  }
  for (const Vec& b : p.normals()) {
    Vec f = Vec::Zero(d);
    f.tail(n) = b;
    facets.push_back(f);
  }
  const int m = static_cast<int>(facets.size());
  Mat f(d, m);
  for (int i = 0; i < m; ++i) f.col(i) = facets[i];

  // The inscribed ellipsoid {z : d·M(u) z·z ≤ 1} with M(u) = Σ u_i f_i f_iᵀ is
  // maximal when u is a D-optimal design on the facet normals. Coordinate
  // ascent with away steps; the Kiefer-Wolfowitz gap max_i κ_i/d − 1 is the
  // stopping criterion (κ_i = f_iᵀ M⁻¹ f_i).
  Vec u = Vec::Constant(m, 1.0 / m);
  double gap = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const Mat mu = f * u.asDiagonal() * f.transpose();
    Eigen::LLT<Mat> llt(symmetrize(mu));
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorKind::degeneracy, "john_of_polytope_product: facet normals do not span");
    }
    const Vec kappa = (f.array() * llt.solve(f).array()).colwise().sum().transpose();

    int up = 0, down = -1;
    for (int i = 0; i < m; ++i) {
      if (kappa(i) > kappa(up)) up = i;
      if (u(i) > 0.0 && (down < 0 || kappa(i) < kappa(down))) down = i;
    }
    const double eps_up = kappa(up) / d - 1.0;
    const double eps_down = 1.0 - kappa(down) / d;
    gap = std::max(eps_up, eps_down);
    if (gap <= options.gap_tol) break;

    const int j = eps_up >= eps_down ? up : down;
    const double k = kappa(j);
    double step = k > 1.0 ? (k - d) / (d * (k - 1.0)) : -std::numeric_limits<double>::infinity();
    if (j == down && eps_up < eps_down) step = std::max(step, -u(j) / (1.0 - u(j)));
    u *= (1.0 - step);
    u(j) += step;
    u = u.cwiseMax(0.0);
  }
  if (gap > options.gap_tol) {
    throw Error(ErrorKind::convergence, "john_of_polytope_product: iteration cap reached",
                {{"gap", gap}, {"iterations", static_cast<double>(it)}});
  }
  // Scale by max κ_i so every facet constraint holds exactly at the approximate optimum.
  const Mat mu = symmetrize(f * u.asDiagonal() * f.transpose());
  const double kappa_max = (f.array() * mu.llt().solve(f).array()).colwise().sum().maxCoeff();
  return {PhaseEllipsoid::make(x.hbar() * kappa_max * mu, x.hbar()), it, gap};
}

namespace {

RescaledBlob finish_rescaled(const Mat& a, const Mat& b, const Mat& s, double hbar,
                             double lambda_max) {
  const QuantumBlob blob = blob_from_symplectic(detail::computed_symplectic(s), hbar);
  // blob ⊆ {blockdiag(A, B) z·z ≤ ħ} ⟺ G ≥ blockdiag(A, B).
  const Mat outer = block_diag(a, b);
  const Mat w = spd_inv_sqrt(outer);
  const double gap = min_eigenvalue(symmetrize(w * blob.g() * w)) - 1.0;
  return {blob, gap >= -1e-9, lambda_max};
}

double checked_lambda_max(const Mat& a, const Mat& b, double hbar) {
  const QuantumPairReport pair =
      quantum_pair_check(EllipsoidBody::make(Space::position, a, hbar),
                         EllipsoidBody::make(Space::momentum, b, hbar));
  if (!pair.holds) {
    throw Error(ErrorKind::domain, "rescaled blob: (X, P) is not a quantum polar pair",
                {{"lambda_max", pair.lambda_max}}, pair.witness);
  }
  return pair.lambda_max;
}

}  // namespace

RescaledBlob rescaled_blob(const Mat& a, const Mat& b, double lambda, double hbar) {
  const double lambda_max = checked_lambda_max(a, b, hbar);
  if (!(lambda >= 1.0 - 1e-12) || !(lambda <= lambda_max * (1.0 + 1e-12))) {
    throw Error(ErrorKind::domain, "rescaled blob: lambda outside [1, lambda_max]",
                {{"lambda", lambda}, {"lambda_max", lambda_max}});
  }
  const auto n = a.rows();
  const Mat s = dilation_matrix(lambda * Mat::Identity(n, n)) * dilation_matrix(spd_sqrt(a));
  return finish_rescaled(a, b, s, hbar, lambda_max);
}

RescaledBlob rescaled_blob_ab(const Mat& a, const Mat& b, double hbar) {
  const double lambda_max = checked_lambda_max(a, b, hbar);
  const Mat l = spd_inv_sqrt(a) * spd_inv_sqrt(b);
  const Mat s = dilation_matrix(l) * dilation_matrix(spd_sqrt(a));
  return finish_rescaled(a, b, s, hbar, lambda_max);
}

GaussianState blob_to_gaussian(const QuantumBlob& blob) {
  const BlobNormalForm nf = blob_normal_form(blob);
  return GaussianState::make(symmetrize(nf.l * nf.l), -nf.p, blob.hbar());
}

QuantumBlob gaussian_to_blob(const GaussianState& state) {
  return QuantumBlob::from_form(wigner_matrix(state), state.hbar);
}

}  // namespace symplecta
