#pragma once

#include <optional>

#include "symplecta/gaussian.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

// Centered phase-space ellipsoid {z : Mz·z ≤ ħ}, M symmetric positive definite.
struct PhaseEllipsoid {
  Mat m;
  double hbar = 1.0;

  static PhaseEllipsoid make(Mat m, double hbar);
  int n() const { return static_cast<int>(m.rows() / 2); }
  double volume() const;
};

// Orthogonal projections of a phase-space ellipsoid onto x and p space:
// Schur complements M/M_PP and M/M_XX.
std::pair<EllipsoidBody, EllipsoidBody> project_ellipsoid(const PhaseEllipsoid& e);

// Quantum blob S(B²ⁿ(√ħ)) stored as G = (SSᵀ)⁻¹, so the blob is {Gz·z ≤ ħ}.
class QuantumBlob {
 public:
  // G must be symmetric positive definite and symplectic within tol.
  static QuantumBlob from_form(Mat g, double hbar, double tol = 1e-9);

  const Mat& g() const { return g_; }
  double hbar() const { return hbar_; }
  int n() const { return static_cast<int>(g_.rows() / 2); }
  // The symplectic matrix the blob was built from, when known.
  const std::optional<SymplecticMatrix>& generator() const { return generator_; }

  PhaseEllipsoid ellipsoid() const { return {g_, hbar_}; }
  double volume() const;

 private:
  QuantumBlob(Mat g, double hbar, std::optional<SymplecticMatrix> s)
      : g_(std::move(g)), hbar_(hbar), generator_(std::move(s)) {}
  friend QuantumBlob blob_from_symplectic(const SymplecticMatrix&, double);

  Mat g_;
  double hbar_;
  std::optional<SymplecticMatrix> generator_;
};

// (1/n!)(πħ)ⁿ, the volume shared by every quantum blob.
double blob_volume(int n, double hbar);

QuantumBlob blob_from_symplectic(const SymplecticMatrix& s, double hbar);

// The unique (P, L) with blob = V_{−P} M_L (B²ⁿ(√ħ)).
struct BlobNormalForm {
  Mat p;
  Mat l;
};
BlobNormalForm blob_normal_form(const QuantumBlob& blob);

struct BlobProjections {
  EllipsoidBody x;
  EllipsoidBody p;
  bool saturated = false;  // off-diagonal block of G vanishes
  QuantumPairReport pair;
};
BlobProjections project_blob(const QuantumBlob& blob, double tol = 1e-9);

struct JohnOfPair {
  PhaseEllipsoid ellipsoid;  // {blockdiag(A, B) z·z ≤ ħ}
  bool is_blob = false;
  double symplectic_residual = 0.0;
};

// John ellipsoid of X × P for X = {Ax·x ≤ ħ}, P = {Bp·p ≤ ħ}.
JohnOfPair john_of_pair(const EllipsoidBody& x, const EllipsoidBody& p);

struct JohnSolverOptions {
  int max_iterations = 200000;
  double gap_tol = 1e-8;
};

struct JohnSolution {
  PhaseEllipsoid ellipsoid;
  int iterations = 0;
  double gap = 0.0;  // relative Kiefer-Wolfowitz gap at exit
};

// Maximal-volume centered ellipsoid inscribed in X × P for polytopes with n ≤ 2.
// Throws convergence error (with the final gap) when the iteration cap is hit.
JohnSolution john_of_polytope_product(const PolytopeBody& x, const PolytopeBody& p,
                                      const JohnSolverOptions& options = {});

struct RescaledBlob {
  QuantumBlob blob;
  bool contained = false;  // blob ⊆ John(X × P)
  double lambda_max = 0.0;
};

// M_λ John(X × X^ħ) with M_λ = diag(λ⁻¹I, λI), for 1 ≤ λ ≤ λ_max. Domain
// error (carrying λ_max) outside that range or when (X, P) is not a quantum pair.
RescaledBlob rescaled_blob(const Mat& a, const Mat& b, double lambda, double hbar);

// M_{A^{-1/2}B^{-1/2}} John(X × X^ħ), the blob {B⁻¹x·x + Bp·p ≤ ħ}.
RescaledBlob rescaled_blob_ab(const Mat& a, const Mat& b, double hbar);

// Blob with normal form (P, L) ↦ ψ_{W,Y} with W = L², Y = −P.
GaussianState blob_to_gaussian(const QuantumBlob& blob);
// ψ_{W,Y} ↦ {Gz·z ≤ ħ} with G the Wigner matrix of the state.
QuantumBlob gaussian_to_blob(const GaussianState& state);

}  // namespace symplecta
