#pragma once

#include <complex>

#include "symplecta/linalg.hpp"

namespace symplecta {

using CVec = Eigen::VectorXcd;

inline constexpr int kDefaultGridPoints = 4096;
inline constexpr double kGridScaleFactor = 12.0;
inline constexpr double kBoundaryGuard = 1e-10;

// Samples f(x_k) on the periodic grid x_k = −L + k·h, h = 2L/N, k = 0..N−1.
struct SampledFunction {
  double hbar = 1.0;
  double l = 1.0;
  CVec values;

  static SampledFunction from_samples(CVec values, double l, double hbar);

  int size() const { return static_cast<int>(values.size()); }
  double spacing() const { return 2.0 * l / size(); }
  double point(int k) const { return -l + k * spacing(); }
  // (h Σ|f_k|²)^{1/2}
  double norm() const;
  SampledFunction normalized() const;
};

// Half width of the default grid for a function of characteristic scale s.
inline double default_half_width(double scale) { return kGridScaleFactor * scale; }

// ψ_{w,y}(x) = (w/πħ)^{1/4} exp(−(w + iy)x²/2ħ).
SampledFunction sample_gaussian(double w, double y, double hbar, double l,
                                int points = kDefaultGridPoints);

// Normalized Hermite function h_m(x) = (2^m m!)^{−1/2}(πħ)^{−1/4} H_m(x/√ħ) e^{−x²/2ħ}.
double hermite_function(int m, double hbar, double x);
SampledFunction sample_hermite(int m, double hbar, double l, int points = kDefaultGridPoints);

// ψ̂(p) = (2πħ)^{−1/2} ∫ e^{−ipx/ħ} ψ(x) dx on the reciprocal grid
// p_m = (m − N/2)Δp, Δp = 2πħ/(N h). Insufficient-grid error when the input or
// output does not decay below kBoundaryGuard (relative to its peak) at the edges.
SampledFunction hbar_fourier(const SampledFunction& f);

// √(1 − ∫_{−a}^{a}|f|² / ‖f‖²) clamped to [0, 1]; piecewise-cubic quadrature.
double concentration(const SampledFunction& f, double a);

struct DonohoStarkReport {
  double lhs = 0.0;  // Vol(C_X × C_P)
  double rhs = 0.0;  // (2πħ)ⁿ(1 − ε_x − ε_p)²
  bool vacuous = false;
  bool consistent = false;
};

// C_X, C_P are boxes given by half widths.
DonohoStarkReport donoho_stark_check(double eps_x, double eps_p, const Vec& cx_half,
                                     const Vec& cp_half, double hbar, double tol = 1e-9);

struct PolarConcentrationReport {
  double lhs = 0.0;                // (2πħ)ⁿ(1 − ε_x − ε_p)²
  double rhs = 0.0;                // (πħ)ⁿ/Γ(n/2 + 1)²
  double stirling_envelope = 0.0;  // (1/πn)(2eπħ/n)ⁿ
  double eps_sum_floor = 0.0;      // 1 − √(rhs/(2πħ)ⁿ)
  bool vacuous = false;
  bool consistent = false;
};

PolarConcentrationReport polar_concentration_bound(int n, double hbar, double eps_x, double eps_p,
                                                   double tol = 1e-9);

enum class HardyRegime { fail, gaussian_unique, hermite_family };
const char* to_string(HardyRegime r);

struct HardyReport {
  Vec eigs;  // spectrum of A^{1/2}BA^{1/2}, descending
  HardyRegime regime = HardyRegime::fail;
  bool polar_equivalent = false;
};

// Classifies Gaussian decay bounds |ψ| ≤ Ce^{−Ax·x/2ħ}, |ψ̂| ≤ Ce^{−Bp·p/2ħ}.
// Internal error if the regime disagrees with the quantum pair check on
// ({Ax·x ≤ ħ}, {Bp·p ≤ ħ}).
HardyReport hardy_check(const Mat& a, const Mat& b, double hbar, double tol = 1e-9);

}  // namespace symplecta
