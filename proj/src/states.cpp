#include "symplecta/states.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "symplecta/capacities.hpp"
#include "symplecta/error.hpp"

namespace symplecta {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using CMat = Eigen::MatrixXcd;

}  // namespace

GaussianState GaussianState::make(Mat w, Mat y, double hbar) {
  require_square(w, "gaussian state W");
  require_square(y, "gaussian state Y");
  if (w.rows() != y.rows()) throw Error(ErrorKind::dimension, "gaussian state: W and Y differ in size");
  require_spd(w, "gaussian state W");
  require_symmetric(y, "gaussian state Y");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "gaussian state: hbar must be positive");
  return {symmetrize(w), symmetrize(y), hbar};
}

GaussianState GaussianState::standard(int n, double hbar) {
  return make(Mat::Identity(n, n), Mat::Zero(n, n), hbar);
}

Mat wigner_matrix(const GaussianState& state) {
  const int n = state.n();
  const Mat w_inv = spd_inverse(state.w);
  Mat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = state.w + state.y * w_inv * state.y;
  g.topRightCorner(n, n) = state.y * w_inv;
  g.bottomLeftCorner(n, n) = w_inv * state.y;
  g.bottomRightCorner(n, n) = w_inv;
  return symmetrize(g);
}

CovarianceMatrix CovarianceMatrix::make(Mat sigma, double hbar) {
  require_even_square(sigma, "covariance");
  require_symmetric(sigma, "covariance");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "covariance: hbar must be positive");
  return {symmetrize(sigma), hbar};
}

CovarianceMatrix covariance(const GaussianState& state) {
  return {0.5 * state.hbar * spd_inverse(wigner_matrix(state)), state.hbar};
}

Vec robertson_schrodinger_check(const CovarianceMatrix& cov) {
  const int n = cov.n();
  Vec margins(n);
  for (int j = 0; j < n; ++j) {
    const double xx = cov.sigma(j, j), pp = cov.sigma(n + j, n + j), xp = cov.sigma(j, n + j);
    margins(j) = xx * pp - xp * xp - 0.25 * cov.hbar * cov.hbar;
  }
  return margins;
}

QuantumVerdict quantum_condition_check(const CovarianceMatrix& cov, double tol) {
  require_even_square(cov.sigma, "quantum_condition_check");
  require_symmetric(cov.sigma, "quantum_condition_check");
  const double hbar = cov.hbar;

  QuantumVerdict v;
  v.rs_margins = robertson_schrodinger_check(cov);
  v.min_eigenvalue = min_eigenvalue(cov.sigma);
  v.positive_definite = is_spd(cov.sigma);
  if (!v.positive_definite) {
    v.min_symplectic_eigenvalue = kNaN;
    v.capacity = kNaN;
    return v;
  }
  v.symplectic_spectrum = symplectic_eigenvalues(cov.sigma);
  v.min_symplectic_eigenvalue = v.symplectic_spectrum(v.symplectic_spectrum.size() - 1);
  v.passes = v.min_symplectic_eigenvalue >= 0.5 * hbar - tol;

  // Ω_Σ = {Mz·z ≤ ħ} with M = (ħ/2)Σ⁻¹.
  const Mat m = 0.5 * hbar * spd_inverse(cov.sigma);
  v.capacity = ellipsoid_capacity(PhaseEllipsoid::make(m, hbar)).value;
  const double pi = std::numbers::pi;
  const bool capacity_passes = v.capacity >= pi * hbar - 2.0 * pi * tol;
  const double distance = std::abs(v.min_symplectic_eigenvalue - (0.5 * hbar - tol));
  if (capacity_passes != v.passes && distance > 1e-12 * std::max(1.0, hbar)) {
    throw Error(ErrorKind::internal, "quantum condition and capacity criterion disagree",
                {{"min_symplectic_eigenvalue", v.min_symplectic_eigenvalue}, {"capacity", v.capacity}});
  }
  if (v.passes) {
    // SᵀMS = diag(Λ, Λ) with Λ ≤ 1, so S(B²ⁿ(√ħ)) ⊆ Ω_Σ.
    v.blob = blob_from_symplectic(williamson(m).s, hbar);
    v.blob_unique = v.min_symplectic_eigenvalue <= 0.5 * hbar + tol;
  }
  return v;
}

std::complex<double> wavefunction(const GaussianState& state, const Vec& x) {
  const int n = state.n();
  if (x.size() != n) throw Error(ErrorKind::dimension, "wavefunction: point has wrong dimension");
  const double norm =
      std::pow(state.w.determinant() / std::pow(std::numbers::pi * state.hbar, n), 0.25);
  const std::complex<double> q(x.dot(state.w * x), x.dot(state.y * x));
  return norm * std::exp(-q / (2.0 * state.hbar));
}

double normal_density(const Mat& cov, const Vec& u) {
  const int n = static_cast<int>(cov.rows());
  if (u.size() != n) throw Error(ErrorKind::dimension, "normal_density: point has wrong dimension");
  const double q = u.dot(spd_inverse(cov) * u);
  return std::exp(-0.5 * q) / std::sqrt(std::pow(2.0 * std::numbers::pi, n) * cov.determinant());
}

Marginals marginals(const GaussianState& state) {
  const int n = state.n();
  const CovarianceMatrix cov = covariance(state);
  return {cov.sigma.topLeftCorner(n, n), cov.sigma.bottomRightCorner(n, n)};
}

double position_density(const GaussianState& state, const Vec& x) {
  return std::norm(wavefunction(state, x));
}

double momentum_density(const GaussianState& state, const Vec& p) {
  return std::norm(wavefunction(metaplectic_apply(state, Generator::fourier(state.n())), p));
}

std::vector<CovarianceMatrix> pauli_partners(double sigma_xx, double sigma_pp, double hbar,
                                             double tol) {
  if (!(sigma_xx > 0.0) || !(sigma_pp > 0.0)) {
    throw Error(ErrorKind::domain, "pauli_partners: variances must be positive");
  }
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "pauli_partners: hbar must be positive");
  const double disc = sigma_xx * sigma_pp - 0.25 * hbar * hbar;
  if (disc < -tol) {
    throw Error(ErrorKind::domain, "pauli_partners: variances are below the Heisenberg floor",
                {{"discriminant", disc}});
  }
  const double s = std::sqrt(std::max(disc, 0.0));
  std::vector<CovarianceMatrix> out;
  for (double sign : {1.0, -1.0}) {
    Mat sigma(2, 2);
    sigma << sigma_xx, sign * s, sign * s, sigma_pp;
    out.push_back({sigma, hbar});
    if (s <= tol) break;
  }
  return out;
}

GaussianState metaplectic_apply(const GaussianState& state, const Generator& g) {
  if (g.n != state.n()) throw Error(ErrorKind::dimension, "metaplectic_apply: dimension mismatch");
  switch (g.kind) {
    case Generator::Kind::shear:
      return GaussianState::make(state.w, state.y + g.block, state.hbar);
    case Generator::Kind::dilation: {
      if (std::abs(g.block.determinant()) == 0.0) {
        throw Error(ErrorKind::contract, "metaplectic_apply: singular dilation");
      }
      const Mat& l = g.block;
      return GaussianState::make(l.transpose() * state.w * l, l.transpose() * state.y * l,
                                 state.hbar);
    }
    case Generator::Kind::fourier: {
      CMat z = state.w.cast<std::complex<double>>();
      z.imag() = state.y;
      const CMat inv = z.partialPivLu().inverse();
      return GaussianState::make(symmetrize(inv.real()), symmetrize(inv.imag()), state.hbar);
    }
  }
  throw Error(ErrorKind::internal, "metaplectic_apply: unknown generator");
}

CovarianceMatrix hermite_product_covariance(int m, int n, double hbar) {
  if (m < 0 || n < 1) throw Error(ErrorKind::domain, "hermite_product_covariance: need m >= 0, n >= 1");
  return {hbar * (m + 0.5) * Mat::Identity(2 * n, 2 * n), hbar};
}

}  // namespace symplecta
