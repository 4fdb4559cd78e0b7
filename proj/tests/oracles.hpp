#pragma once

// Independent reference computations. Nothing here calls into the library's
// numerical routines; only plain Eigen and closed forms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
constexpr double kPi = std::numbers::pi;

inline Mat j_matrix(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return j;
}

inline double symplectic_residual(const Mat& s) {
  const int n = static_cast<int>(s.rows() / 2);
  return (s.transpose() * j_matrix(n) * s - j_matrix(n)).cwiseAbs().maxCoeff();
}

// Moduli of the eigenvalues of JM from the dense nonsymmetric solver, one per
// ±iλ pair, descending.
inline Vec symplectic_spectrum(const Mat& m) {
  const int n = static_cast<int>(m.rows() / 2);
  Eigen::EigenSolver<Mat> es(j_matrix(n) * m);
  std::vector<double> mods;
  for (int i = 0; i < 2 * n; ++i) mods.push_back(std::abs(es.eigenvalues()(i).imag()));
  std::sort(mods.begin(), mods.end(), std::greater<>());
  Vec out(n);
  for (int i = 0; i < n; ++i) out(i) = mods[2 * i];
  return out;
}

// Real eigenvalues of the product AB (similar to A^{1/2}BA^{1/2}), descending.
inline Vec product_spectrum(const Mat& a, const Mat& b) {
  Eigen::EigenSolver<Mat> es(a * b);
  Vec ev = es.eigenvalues().real();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

inline Mat random_spd(std::mt19937_64& rng, int n, double cond) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = u(rng);
  Eigen::HouseholderQR<Mat> qr(a);
  const Mat q = qr.householderQ();
  Vec d(n);
  for (int i = 0; i < n; ++i) d(i) = std::exp(std::log(cond) * 0.5 * u(rng));
  return q * d.asDiagonal() * q.transpose();
}

// Support function of {u : Qu·u ≤ ħ}.
inline double ellipsoid_support(const Mat& q, double hbar, const Vec& d) {
  return std::sqrt(hbar * d.dot(q.ldlt().solve(d)));
}

inline double vertex_support(const std::vector<Vec>& vs, const Vec& d) {
  double best = -1e300;
  for (const Vec& v : vs) best = std::max(best, v.dot(d));
  return best;
}

// Vertices of {p : p·v ≤ ħ for all v} in the plane: pairwise line
// intersections that satisfy every constraint.
inline std::vector<Vec> planar_polar_vertices(const std::vector<Vec>& vs, double hbar) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t k = i + 1; k < vs.size(); ++k) {
      Eigen::Matrix2d a;
      a << vs[i](0), vs[i](1), vs[k](0), vs[k](1);
      if (std::abs(a.determinant()) < 1e-12) continue;
      const Vec p = a.inverse() * Eigen::Vector2d(hbar, hbar);
      bool ok = true;
      for (const Vec& v : vs) ok = ok && v.dot(p) <= hbar * (1 + 1e-12);
      if (ok) out.push_back(p);
    }
  }
  return out;
}

// Shoelace area of the convex hull of planar points (angle sort about the centroid).
inline double polygon_area(std::vector<Vec> pts) {
  Vec c = Vec::Zero(2);
  for (const Vec& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a(1) - c(1), a(0) - c(0)) < std::atan2(b(1) - c(1), b(0) - c(0));
  });
  double s = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& a = pts[i];
    const Vec& b = pts[(i + 1) % pts.size()];
    s += a(0) * b(1) - a(1) * b(0);
  }
  return 0.5 * std::abs(s);
}

inline std::vector<Vec> unit_directions(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec> out;
  for (int i = 0; i < count; ++i) {
    Vec d(dim);
    for (int k = 0; k < dim; ++k) d(k) = g(rng);
    out.push_back(d.normalized());
  }
  return out;
}

// Composite trapezoid rule with n panels.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

// Explicit physicists' Hermite polynomials H_0..H_5.
inline double hermite_poly(int m, double u) {
  switch (m) {
    case 0: return 1;
    case 1: return 2 * u;
    case 2: return 4 * u * u - 2;
    case 3: return 8 * u * u * u - 12 * u;
    case 4: return 16 * std::pow(u, 4) - 48 * u * u + 12;
    case 5: return 32 * std::pow(u, 5) - 160 * std::pow(u, 3) + 120 * u;
  }
  return std::nan("");
}

inline double hermite_function(int m, double hbar, double x) {
  const double u = x / std::sqrt(hbar);
  return hermite_poly(m, u) * std::exp(-0.5 * u * u) /
         std::sqrt(std::pow(2.0, m) * std::tgamma(m + 1.0) * std::sqrt(kPi * hbar));
}

// ħ-Fourier transform of (w/πħ)^{1/4} exp(−(w + iy)x²/2ħ):
// (w/πħ)^{1/4} (w + iy)^{−1/2} exp(−p²/(2ħ(w + iy))).
inline std::complex<double> gaussian_ft(double w, double y, double hbar, double p) {
  const std::complex<double> z(w, y);
  return std::pow(w / (kPi * hbar), 0.25) / std::sqrt(z) * std::exp(-p * p / (2.0 * hbar * z));
}

}  // namespace oracle
