#pragma once

#include <cstdint>

#include "symplecta/linalg.hpp"

namespace symplecta {

inline constexpr double kSymplecticTol = 1e-10;

// Outcome of a numerical predicate together with the residual it was decided on.
struct Check {
  bool holds = false;
  double residual = 0.0;
  explicit operator bool() const { return holds; }
};

// ‖SᵀJS − J‖_max ≤ tol. Throws a dimension error for odd or non-square input.
Check is_symplectic(const Mat& s, double tol = kSymplecticTol);

// A 2n×2n real matrix known to satisfy SᵀJS = J, blocks in (x, p) order.
class SymplecticMatrix {
 public:
  // Validates with an absolute tolerance on ‖SᵀJS − J‖_max; contract error otherwise.
  static SymplecticMatrix from_matrix(Mat m, double tol = kSymplecticTol);
  static SymplecticMatrix identity(int n);

  const Mat& matrix() const { return m_; }
  int n() const { return static_cast<int>(m_.rows() / 2); }

  Mat a() const { return m_.topLeftCorner(n(), n()); }
  Mat b() const { return m_.topRightCorner(n(), n()); }
  Mat c() const { return m_.bottomLeftCorner(n(), n()); }
  Mat d() const { return m_.bottomRightCorner(n(), n()); }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

 private:
  explicit SymplecticMatrix(Mat m) : m_(std::move(m)) {}
  Mat m_;
};

// Shear V_P = ((I, 0), (−P, I)) for symmetric P; V_{−P} has P in the lower-left block.
Mat shear_matrix(const Mat& p);

// Dilation M_L = ((L⁻¹, 0), (0, Lᵀ)) for invertible L.
Mat dilation_matrix(const Mat& l);

// One of the three families generating Sp(n).
struct Generator {
  enum class Kind { fourier, dilation, shear };

  Kind kind = Kind::fourier;
  int n = 1;
  Mat block;  // L for dilation, P for shear, empty for fourier

  static Generator fourier(int n);
  static Generator dilation(Mat l);  // throws contract error if det L = 0
  static Generator shear(Mat p);     // throws contract error if P is not symmetric

  SymplecticMatrix matrix() const;
};

// Returns (Dᵀ, −Bᵀ; −Cᵀ, Aᵀ).
SymplecticMatrix symplectic_inverse(const SymplecticMatrix& s);

// S = V_{−P} M_L R with P symmetric, L symmetric positive definite and R a
// symplectic rotation ((E, F), (−F, E)).
struct PreIwasawaFactors {
  Mat p;
  Mat l;
  SymplecticMatrix r = SymplecticMatrix::identity(1);
  double p_asymmetry = 0.0;  // before symmetrization

  Mat reconstruct() const;
};

PreIwasawaFactors pre_iwasawa(const SymplecticMatrix& s);

// Symplectic spectrum of an SPD matrix, descending. ±iλ are the eigenvalues of JM;
// computed from the skew-symmetric K = M^{1/2} J M^{1/2}.
Vec symplectic_eigenvalues(const Mat& m);

struct WilliamsonForm {
  SymplecticMatrix s = SymplecticMatrix::identity(1);
  Vec spectrum;     // descending
  double residual;  // ‖SᵀMS − diag(Λ, Λ)‖_max
};

// Williamson normal form SᵀMS = diag(Λ, Λ). S is unique only up to Sp(n) ∩ O(2n).
WilliamsonForm williamson(const Mat& m);

// Deterministic product of four rounds V_{−P}·M_L·J with random symmetric P and
// SPD L whose log-spectrum scales with spread. spread = 0 gives J⁴ = I.
SymplecticMatrix random_symplectic(std::uint64_t seed, int n, double spread);

}  // namespace symplecta
