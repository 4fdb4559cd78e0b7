#include "symplecta/concentration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "symplecta/error.hpp"
#include "symplecta/polar.hpp"

namespace symplecta {

namespace {

constexpr double kPi = std::numbers::pi;

void require_decay(const SampledFunction& f, const char* what) {
  const double peak = f.values.cwiseAbs().maxCoeff();
  const int n = f.size();
  const double edge = std::max({std::abs(f.values(0)), std::abs(f.values(1)),
                                std::abs(f.values(n - 1))});
  if (!(peak > 0.0)) throw Error(ErrorKind::domain, "sampled function vanishes identically");
  if (edge > kBoundaryGuard * peak) {
    throw Error(ErrorKind::insufficient_grid, what, {{"edge_ratio", edge / peak}});
  }
}

// ∫_0^t of the Lagrange basis on nodes s = −1, 0, 1, 2.
std::array<double, 4> cubic_weights(double t) {
  const double t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  return {-(t4 / 4 - t3 + t2) / 6, (t4 / 4 - 2 * t3 / 3 - t2 / 2 + 2 * t) / 2,
          -(t4 / 4 - t3 / 3 - t2) / 2, (t4 / 4 - t2 / 2) / 6};
}

// ∫_{−L}^{x} g for g sampled on the periodic grid.
double cumulative(const Eigen::VectorXd& g, double l, double h, double x) {
  const int n = static_cast<int>(g.size());
  const double s = (x + l) / h;
  int k = std::clamp(static_cast<int>(std::floor(s)), 0, n);
  double total = 0.0;
  const auto full = cubic_weights(1.0);
  for (int c = 0; c < k; ++c) {
    total += h * (full[0] * g((c - 1 + n) % n) + full[1] * g(c % n) + full[2] * g((c + 1) % n) +
                  full[3] * g((c + 2) % n));
  }
  const double t = s - k;
  if (k < n && t > 0.0) {
    const auto w = cubic_weights(t);
    total += h * (w[0] * g((k - 1 + n) % n) + w[1] * g(k) + w[2] * g((k + 1) % n) +
                  w[3] * g((k + 2) % n));
  }
  return total;
}

}  // namespace

SampledFunction SampledFunction::from_samples(CVec values, double l, double hbar) {
  if (values.size() < 4 || values.size() % 2 != 0) {
    throw Error(ErrorKind::dimension, "sampled function: need an even number of at least 4 samples");
  }
  if (!(l > 0.0)) throw Error(ErrorKind::domain, "sampled function: L must be positive");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "sampled function: hbar must be positive");
  return {hbar, l, std::move(values)};
}

double SampledFunction::norm() const { return std::sqrt(spacing() * values.squaredNorm()); }

SampledFunction SampledFunction::normalized() const {
  const double nrm = norm();
  if (!(nrm > 0.0)) throw Error(ErrorKind::domain, "sampled function: zero norm");
  return {hbar, l, values / nrm};
}

SampledFunction sample_gaussian(double w, double y, double hbar, double l, int points) {
  if (!(w > 0.0)) throw Error(ErrorKind::definiteness, "sample_gaussian: w must be positive");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "sample_gaussian: hbar must be positive");
  CVec v(points);
  const double h = 2.0 * l / points;
  const double norm = std::pow(w / (kPi * hbar), 0.25);
  for (int k = 0; k < points; ++k) {
    const double x = -l + k * h;
    v(k) = norm * std::exp(-std::complex<double>(w, y) * x * x / (2.0 * hbar));
  }
  return SampledFunction::from_samples(std::move(v), l, hbar);
}

double hermite_function(int m, double hbar, double x) {
  if (m < 0) throw Error(ErrorKind::domain, "hermite_function: order must be non-negative");
  const double u = x / std::sqrt(hbar);
  double prev = 0.0;
  double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
  for (int k = 0; k < m; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * u * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur * std::pow(hbar, -0.25);
}

SampledFunction sample_hermite(int m, double hbar, double l, int points) {
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "sample_hermite: hbar must be positive");
  CVec v(points);
  const double h = 2.0 * l / points;
  for (int k = 0; k < points; ++k) v(k) = hermite_function(m, hbar, -l + k * h);
  return SampledFunction::from_samples(std::move(v), l, hbar);
}

SampledFunction hbar_fourier(const SampledFunction& f) {
  require_decay(f, "hbar_fourier: input does not decay at the grid edge");
  const int n = f.size();
  const double h = f.spacing();
  const double dp = 2.0 * kPi * f.hbar / (n * h);

  std::vector<std::complex<double>> in(n), out;
  for (int k = 0; k < n; ++k) in[k] = (k % 2 == 0 ? 1.0 : -1.0) * f.values(k);
  Eigen::FFT<double> fft;
  fft.fwd(out, in);

  const double scale = h / std::sqrt(2.0 * kPi * f.hbar);
  CVec v(n);
  for (int m = 0; m < n; ++m) v(m) = ((m - n / 2) % 2 == 0 ? scale : -scale) * out[m];
  SampledFunction g{f.hbar, 0.5 * n * dp, std::move(v)};
  require_decay(g, "hbar_fourier: transform does not decay at the grid edge");
  return g;
}

double concentration(const SampledFunction& f, double a) {
  if (a < 0.0) throw Error(ErrorKind::domain, "concentration: half width must be non-negative");
  if (a > f.l * (1.0 + 1e-12)) {
    throw Error(ErrorKind::domain, "concentration: interval exceeds the grid",
                {{"a", a}, {"L", f.l}});
  }
  a = std::min(a, f.l);
  const Eigen::VectorXd g = f.values.cwiseAbs2();
  const double h = f.spacing();
  const double inside = cumulative(g, f.l, h, a) - cumulative(g, f.l, h, -a);
  const double total = h * g.sum();
  return std::clamp(std::sqrt(std::max(0.0, 1.0 - inside / total)), 0.0, 1.0);
}

DonohoStarkReport donoho_stark_check(double eps_x, double eps_p, const Vec& cx_half,
                                     const Vec& cp_half, double hbar, double tol) {
  if (cx_half.size() != cp_half.size() || cx_half.size() == 0) {
    throw Error(ErrorKind::dimension, "donoho_stark_check: box dimensions differ");
  }
  if ((cx_half.array() < 0).any() || (cp_half.array() < 0).any()) {
    throw Error(ErrorKind::domain, "donoho_stark_check: negative half width");
  }
  const int n = static_cast<int>(cx_half.size());
  DonohoStarkReport r;
  r.lhs = (2.0 * cx_half.array()).prod() * (2.0 * cp_half.array()).prod();
  const double gap = 1.0 - eps_x - eps_p;
  r.rhs = std::pow(2.0 * kPi * hbar, n) * gap * gap;
  r.vacuous = gap <= 0.0;
  r.consistent = r.vacuous || r.lhs >= r.rhs - tol;
  return r;
}

PolarConcentrationReport polar_concentration_bound(int n, double hbar, double eps_x, double eps_p,
                                                   double tol) {
  if (n < 1) throw Error(ErrorKind::dimension, "polar_concentration_bound: n must be positive");
  if (!(hbar > 0.0)) throw Error(ErrorKind::domain, "polar_concentration_bound: hbar must be positive");
  PolarConcentrationReport r;
  const double gap = 1.0 - eps_x - eps_p;
  r.lhs = std::pow(2.0 * kPi * hbar, n) * gap * gap;
  r.rhs = std::exp(n * std::log(kPi * hbar) - 2.0 * std::lgamma(0.5 * n + 1.0));
  r.stirling_envelope = std::pow(2.0 * std::numbers::e * kPi * hbar / n, n) / (kPi * n);
  r.eps_sum_floor = 1.0 - std::sqrt(std::exp(std::log(r.rhs) - n * std::log(2.0 * kPi * hbar)));
  r.vacuous = gap <= 0.0;
  r.consistent = r.vacuous || r.lhs <= r.rhs + tol;
  return r;
}

const char* to_string(HardyRegime r) {
  switch (r) {
    case HardyRegime::fail: return "fail";
    case HardyRegime::gaussian_unique: return "gaussian_unique";
    case HardyRegime::hermite_family: return "hermite_family";
  }
  return "unknown";
}

HardyReport hardy_check(const Mat& a, const Mat& b, double hbar, double tol) {
  require_square(a, "hardy_check A");
  require_square(b, "hardy_check B");
  if (a.rows() != b.rows()) throw Error(ErrorKind::dimension, "hardy_check: A and B differ in size");
  require_spd(a, "hardy_check A");
  require_spd(b, "hardy_check B");
  const Mat ra = spd_sqrt(a);
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(ra * b * ra), Eigen::EigenvaluesOnly);
  HardyReport r;
  r.eigs = es.eigenvalues().reverse();

  // Same threshold as the pair check: λ_max = eig^{−1/2} ≥ 1 − tol.
  const double fail_above = 1.0 / ((1.0 - tol) * (1.0 - tol));
  if (r.eigs(0) > fail_above) {
    r.regime = HardyRegime::fail;
  } else if ((r.eigs.array() - 1.0).abs().maxCoeff() <= tol) {
    r.regime = HardyRegime::gaussian_unique;
  } else {
    r.regime = HardyRegime::hermite_family;
  }
  r.polar_equivalent = quantum_pair_check(EllipsoidBody::make(Space::position, a, hbar),
                                          EllipsoidBody::make(Space::momentum, b, hbar), tol)
                           .holds;
  if (r.polar_equivalent != (r.regime != HardyRegime::fail)) {
    throw Error(ErrorKind::internal, "hardy_check: eigenvalue regime disagrees with the pair check",
                {{"max_eig", r.eigs(0)}});
  }
  return r;
}

}  // namespace symplecta
