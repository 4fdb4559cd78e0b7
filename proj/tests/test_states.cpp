#include <doctest.h>

#include <complex>

#include "oracles.hpp"
#include "symplecta/error.hpp"
#include "symplecta/states.hpp"

using namespace symplecta;

namespace {

Mat wigner_oracle(const Mat& w, const Mat& y) {
  const int n = static_cast<int>(w.rows());
  const Mat wi = w.inverse();
  Mat g(2 * n, 2 * n);
  g << w + y * wi * y, y * wi, wi * y, wi;
  return g;
}

// Σ + (iħ/2)J ⪰ 0 from the Hermitian eigensolver.
double quantum_min_eig(const Mat& sigma, double hbar) {
  const int n = static_cast<int>(sigma.rows() / 2);
  Eigen::MatrixXcd h = sigma.cast<std::complex<double>>();
  h.imag() = 0.5 * hbar * oracle::j_matrix(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  return es.eigenvalues().minCoeff();
}

Mat random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = g(rng);
  return 0.5 * (a + a.transpose());
}

double rel_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

Vec v1(double a) { return Vec::Constant(1, a); }

}  // namespace

TEST_CASE("covariance of a one-mode Gaussian by quadrature") {
  for (auto [w, y, hbar] : {std::tuple{1.0, 0.0, 1.0}, {2.5, -0.7, 1.0}, {0.4, 1.3, 0.3}}) {
    const GaussianState st = GaussianState::make(v1(w), v1(y), hbar);
    const double half = 14.0 * std::sqrt(hbar * (w * w + y * y) / w);
    auto dens_x = [&](double x) { return std::norm(wavefunction(st, v1(x))); };
    auto dens_p = [&](double p) { return std::norm(oracle::gaussian_ft(w, y, hbar, p)); };
    CHECK(oracle::trapezoid(dens_x, -half, half, 4000) == doctest::Approx(1.0).epsilon(1e-10));
    const double sxx = oracle::trapezoid([&](double x) { return x * x * dens_x(x); }, -half, half, 4000);
    const double spp = oracle::trapezoid([&](double p) { return p * p * dens_p(p); }, -half, half, 4000);
    const CovarianceMatrix cov = covariance(st);
    CHECK(cov.sigma(0, 0) == doctest::Approx(sxx).epsilon(1e-9));
    CHECK(cov.sigma(1, 1) == doctest::Approx(spp).epsilon(1e-9));
    // Re⟨ψ, x p̂ ψ⟩ = −Y⟨x²⟩ for this family.
    CHECK(cov.sigma(0, 1) == doctest::Approx(-y * sxx).epsilon(1e-9));
    const Marginals m = marginals(st);
    CHECK(m.position_covariance(0, 0) == doctest::Approx(sxx).epsilon(1e-9));
    CHECK(m.momentum_covariance(0, 0) == doctest::Approx(spp).epsilon(1e-9));
    for (double p : {-1.0, 0.0, 0.4, 2.0}) {
      CHECK(momentum_density(st, v1(p)) == doctest::Approx(dens_p(p)).epsilon(1e-12));
      // Marginal density is the normal with variance Σ_PP.
      CHECK(momentum_density(st, v1(p)) == doctest::Approx(normal_density(m.momentum_covariance, v1(p))).epsilon(1e-12));
      CHECK(position_density(st, v1(p)) == doctest::Approx(normal_density(m.position_covariance, v1(p))).epsilon(1e-12));
    }
  }
}

TEST_CASE("quantum condition examples") {
  for (double hbar : {0.5, 1.0, 2.0}) {
    const auto v = quantum_condition_check(CovarianceMatrix::make(0.5 * hbar * Mat::Identity(4, 4), hbar));
    CHECK(v.passes);
    CHECK(v.blob_unique);
    CHECK(v.capacity == doctest::Approx(oracle::kPi * hbar).epsilon(1e-12));
    REQUIRE(v.blob.has_value());
    CHECK(rel_diff(v.blob->g(), Mat::Identity(4, 4)) <= 1e-10);
    CHECK((v.rs_margins.array().abs() <= 1e-12).all());

    const auto f = quantum_condition_check(CovarianceMatrix::make(0.4 * hbar * Mat::Identity(2, 2), hbar));
    CHECK_FALSE(f.passes);
    CHECK(f.capacity == doctest::Approx(0.8 * oracle::kPi * hbar).epsilon(1e-12));
    CHECK_FALSE(f.blob.has_value());
  }
  Mat indef(2, 2);
  indef << 1, 0, 0, -1;
  const auto nd = quantum_condition_check(CovarianceMatrix::make(indef, 1.0));
  CHECK_FALSE(nd.passes);
  CHECK_FALSE(nd.positive_definite);
  CHECK(nd.min_eigenvalue == doctest::Approx(-1.0));
  CHECK(std::isnan(nd.min_symplectic_eigenvalue));

  // Mixed but admissible: blob exists, not unique.
  const auto mixed = quantum_condition_check(CovarianceMatrix::make(2.0 * Mat::Identity(2, 2), 1.0));
  CHECK(mixed.passes);
  CHECK_FALSE(mixed.blob_unique);
  CHECK_THROWS_AS(CovarianceMatrix::make(Mat::Identity(3, 3), 1.0), Error);
}

TEST_CASE("quantum condition agrees with the Hermitian test and the capacity") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.2, 1.5);
  int passes = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const double hbar = t % 4 == 0 ? 2.0 : 1.0;
    const Mat s = random_symplectic(t, n, 0.5).matrix();
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = u(rng);
    Mat diag = Mat::Zero(2 * n, 2 * n);
    diag.diagonal() << d, d;
    const Mat sigma = 0.5 * (s * (hbar * diag) * s.transpose() + (s * (hbar * diag) * s.transpose()).transpose());
    const auto v = quantum_condition_check(CovarianceMatrix::make(sigma, hbar));
    const double nu_min = oracle::symplectic_spectrum(sigma).minCoeff();
    const bool ref = quantum_min_eig(sigma, hbar) >= -1e-9;
    if (std::abs(nu_min - 0.5 * hbar) > 1e-7) CHECK(v.passes == ref);
    CHECK(v.min_symplectic_eigenvalue == doctest::Approx(nu_min).epsilon(1e-8));
    CHECK(v.capacity == doctest::Approx(2 * oracle::kPi * nu_min).epsilon(1e-8));
    if (v.passes) {
      ++passes;
      CHECK((v.rs_margins.array() >= -1e-9).all());
      REQUIRE(v.blob.has_value());
      // blob ⊆ {(ħ/2)Σ⁻¹z·z ≤ ħ} ⟺ G ⪰ (ħ/2)Σ⁻¹.
      const Mat m = 0.5 * hbar * sigma.inverse();
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> ges(v.blob->g(), m);
      CHECK(ges.eigenvalues().minCoeff() >= 1.0 - 1e-8);
    }
  }
  CHECK(passes > 20);
  CHECK(passes < 180);
}

TEST_CASE("Robertson-Schrödinger margins") {
  Mat s(2, 2);
  s << 1.0, 0.3, 0.3, 0.5;
  const Vec m = robertson_schrodinger_check(CovarianceMatrix::make(s, 1.0));
  CHECK(m(0) == doctest::Approx(0.5 - 0.09 - 0.25));
  // Pure states saturate RS for n = 1.
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const GaussianState st = GaussianState::make(oracle::random_spd(rng, 1, 4.0), random_symmetric(rng, 1), 0.7);
    CHECK(std::abs(robertson_schrodinger_check(covariance(st))(0)) <= 1e-12);
  }
}

TEST_CASE("Pauli partners") {
  const auto one = pauli_partners(0.5, 0.5, 1.0);
  REQUIRE(one.size() == 1);
  CHECK(one[0].sigma(0, 1) == doctest::Approx(0.0));
  const auto two = pauli_partners(1.0, 2.0, 1.0);
  REQUIRE(two.size() == 2);
  for (const auto& c : two) {
    CHECK(c.sigma.determinant() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(oracle::symplectic_spectrum(c.sigma)(0) == doctest::Approx(0.5).epsilon(1e-10));
  }
  CHECK(two[0].sigma(0, 1) == doctest::Approx(-two[1].sigma(0, 1)));
  CHECK_THROWS_AS(pauli_partners(0.4, 0.5, 1.0), Error);
}

TEST_CASE("metaplectic action covers the symplectic action on Wigner forms") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 3;
    const GaussianState st = GaussianState::make(oracle::random_spd(rng, n, 5.0), random_symmetric(rng, n), 1.0);
    Mat l = oracle::random_spd(rng, n, 3.0);
    l(0, n - 1) += 0.2;
    for (const Generator& g : {Generator::fourier(n), Generator::shear(random_symmetric(rng, n)),
                               Generator::dilation(l)}) {
      const Mat s_inv = g.matrix().matrix().inverse();
      const Mat expected = s_inv.transpose() * wigner_oracle(st.w, st.y) * s_inv;
      const GaussianState out = metaplectic_apply(st, g);
      CHECK(rel_diff(wigner_oracle(out.w, out.y), expected) <= 1e-8);
    }
  }
}

TEST_CASE("Hermite product covariance") {
  for (int m = 0; m <= 5; ++m) {
    const double hbar = 0.8;
    const double var = oracle::trapezoid(
        [&](double x) { return x * x * std::pow(oracle::hermite_function(m, hbar, x), 2); }, -12, 12, 6000);
    const CovarianceMatrix c = hermite_product_covariance(m, 2, hbar);
    CHECK(c.sigma(0, 0) == doctest::Approx(var).epsilon(1e-9));
    CHECK(c.sigma(3, 3) == doctest::Approx(var).epsilon(1e-9));
    const auto v = quantum_condition_check(c);
    CHECK(v.passes);
    CHECK(v.blob_unique == (m == 0));
  }
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(GaussianState::make(-Mat::Identity(1, 1), Mat::Zero(1, 1), 1.0), Error);
  Mat y(2, 2);
  y << 0, 1, 0, 0;
  CHECK_THROWS_AS(GaussianState::make(Mat::Identity(2, 2), y, 1.0), Error);
  CHECK_THROWS_AS(wavefunction(GaussianState::standard(2, 1.0), Vec::Zero(3)), Error);
  CHECK(std::abs(wavefunction(GaussianState::standard(1, 1.0), v1(0))) ==
        doctest::Approx(std::pow(oracle::kPi, -0.25)));
}
