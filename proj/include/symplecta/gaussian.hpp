#pragma once

#include "symplecta/linalg.hpp"

namespace symplecta {

// Generalized centered Gaussian
//   ψ_{W,Y}(x) = (det W / (πħ)ⁿ)^{1/4} exp(−(W + iY)x·x / 2ħ),
// identified modulo a global phase.
struct GaussianState {
  Mat w;  // symmetric positive definite
  Mat y;  // symmetric
  double hbar = 1.0;

  static GaussianState make(Mat w, Mat y, double hbar);
  // The standard Gaussian φ₀ = ψ_{I,0}.
  static GaussianState standard(int n, double hbar);

  int n() const { return static_cast<int>(w.rows()); }
};

// G = ((W + YW⁻¹Y, YW⁻¹), (W⁻¹Y, W⁻¹)); Wψ(z) = (πħ)⁻ⁿ exp(−Gz·z/ħ).
Mat wigner_matrix(const GaussianState& state);

}  // namespace symplecta
