#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "symplecta/blobs.hpp"
#include "symplecta/gaussian.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

// Second moments of a centered state, Σ = ∫ zzᵀ W(z) dz.
struct CovarianceMatrix {
  Mat sigma;
  double hbar = 1.0;

  // Checks shape and symmetry only; positivity is a verdict, not a precondition.
  static CovarianceMatrix make(Mat sigma, double hbar);
  int n() const { return static_cast<int>(sigma.rows() / 2); }
};

// Σ = (ħ/2)G⁻¹ with G the Wigner matrix.
CovarianceMatrix covariance(const GaussianState& state);

struct QuantumVerdict {
  bool passes = false;
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
  double min_symplectic_eigenvalue = 0.0;  // NaN when Σ is not positive definite
  Vec symplectic_spectrum;                 // descending
  double capacity = 0.0;                   // c({(1/2)Σ⁻¹z·z ≤ 1}), NaN when not PD
  Vec rs_margins;
  std::optional<QuantumBlob> blob;  // a blob inside the covariance ellipsoid
  bool blob_unique = false;
};

// Σ + (iħ/2)J ⪰ 0, decided on the symplectic spectrum and cross-checked against
// the capacity of the covariance ellipsoid.
QuantumVerdict quantum_condition_check(const CovarianceMatrix& cov, double tol = 1e-9);

// Δx_j²Δp_j² − Δ(x_j, p_j)² − ħ²/4 for j = 1..n.
Vec robertson_schrodinger_check(const CovarianceMatrix& cov);

std::complex<double> wavefunction(const GaussianState& state, const Vec& x);

// Normal density with the given covariance.
double normal_density(const Mat& cov, const Vec& u);

struct Marginals {
  Mat position_covariance;  // Σ_XX
  Mat momentum_covariance;  // Σ_PP
};
Marginals marginals(const GaussianState& state);

// |ψ(x)|² and |ψ̂(p)|² from the wavefunctions themselves.
double position_density(const GaussianState& state, const Vec& x);
double momentum_density(const GaussianState& state, const Vec& p);

// Pure n = 1 covariances with the given variances: off-diagonal ±√(σ_xx σ_pp − ħ²/4).
// One matrix when the discriminant vanishes, two otherwise.
std::vector<CovarianceMatrix> pauli_partners(double sigma_xx, double sigma_pp, double hbar,
                                             double tol = 1e-9);

// Action of the metaplectic operator covering a generator, up to a global phase.
GaussianState metaplectic_apply(const GaussianState& state, const Generator& g);

// Covariance ħ(m + 1/2)I of the product Hermite state of order m in every mode.
CovarianceMatrix hermite_product_covariance(int m, int n, double hbar);

}  // namespace symplecta
