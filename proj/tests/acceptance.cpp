// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <string>

#include "oracles.hpp"
#include "symplecta/blobs.hpp"
#include "symplecta/capacities.hpp"
#include "symplecta/concentration.hpp"
#include "symplecta/error.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/states.hpp"
#include "symplecta/symplectic.hpp"

using namespace symplecta;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s [%2d] %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  if (!ok) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Vec v2(double a, double b) { return Vec(Eigen::Vector2d(a, b)); }

PolytopeBody random_polygon(std::mt19937_64& rng, double hbar) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = 3 + static_cast<int>(rng() % 4);
  std::vector<Vec> gens;
  for (int i = 0; i < k; ++i) {
    const double t = oracle::kPi * (i + 0.1 + 0.8 * u(rng)) / k;
    const double r = 0.5 + 1.5 * u(rng);
    gens.push_back(v2(r * std::cos(t), r * std::sin(t)));
  }
  return PolytopeBody::symmetric_hull(Space::position, gens, hbar);
}

Mat random_symmetric(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) a(i, k) = g(rng);
  return 0.5 * (a + a.transpose());
}

double support_gap(const ConvexBody& a, const ConvexBody& b, int dim, std::uint64_t seed) {
  double worst = 0.0;
  for (const Vec& d : oracle::unit_directions(dim, 100, seed)) {
    const double hb = support_function(b, d);
    worst = std::max(worst, std::abs(support_function(a, d) - hb) / std::max(1.0, hb));
  }
  return worst;
}

double rel_diff(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

void criterion_polar_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  double worst = 0.0;
  bool anti = true;
  for (int t = 0; t < 200; ++t) {
    const bool ellipsoid = t < 100;
    const int n = ellipsoid ? 1 + t % 4 : 2;
    const double hbar = 0.5 + 0.5 * (t % 3);
    const ConvexBody body = ellipsoid
                                ? ConvexBody(EllipsoidBody::make(Space::position, oracle::random_spd(rng, n, 20.0), hbar))
                                : ConvexBody(random_polygon(rng, hbar));
    // Biduality.
    worst = std::max(worst, support_gap(polar_dual(polar_dual(body)), body, n, t));
    // Scaling (λX)^ħ = λ⁻¹X^ħ.
    worst = std::max(worst, support_gap(polar_dual(scaled(body, 1.7)), scaled(polar_dual(body), 1.0 / 1.7), n, t));
    // Antimonotonicity: X ⊆ Y ⇒ Y^ħ ⊆ X^ħ.
    const ConvexBody bigger = scaled(body, 1.3);
    anti = anti && contains(bigger, body).holds && contains(polar_dual(body), polar_dual(bigger)).holds &&
           !contains(polar_dual(bigger), polar_dual(body)).holds;
    // Against an independent dual for polygons.
    if (!ellipsoid) {
      const auto ref = oracle::planar_polar_vertices(std::get<PolytopeBody>(body).vertices(), hbar);
      const ConvexBody dual = polar_dual(body);
      for (const Vec& d : oracle::unit_directions(2, 50, t)) {
        const double r = oracle::vertex_support(ref, d);
        worst = std::max(worst, std::abs(support_function(dual, d) - r) / std::max(1.0, r));
      }
    } else {
      const Mat& q = std::get<EllipsoidBody>(body).q;
      const ConvexBody dual = polar_dual(body);
      for (const Vec& d : oracle::unit_directions(n, 50, t)) {
        // h_{X^ħ}(d) = √(ħ Qd·d) for X = {Qx·x ≤ ħ}.
        const double r = std::sqrt(hbar * d.dot(q * d));
        worst = std::max(worst, std::abs(support_function(dual, d) - r) / std::max(1.0, r));
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, "polar duality suite", worst <= 1e-9 && anti && secs < 10.0,
         fmt("max support discrepancy %.3g, antimonotone %g, %.2f s", worst, anti ? 1.0 : 0.0, secs));
}

void criterion_ball_self_duality() {
  double worst = 0.0;
  for (double hbar : {0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 4; ++n) {
      const auto dual = std::get<EllipsoidBody>(polar_dual(EllipsoidBody::ball(Space::position, n, std::sqrt(hbar), hbar)));
      worst = std::max(worst, (dual.q - Mat::Identity(n, n)).cwiseAbs().maxCoeff());
    }
  }
  report(2, "ball self-duality", worst <= 1e-12, fmt("max |Q - I| = %.3g", worst));
}

void criterion_mahler() {
  std::mt19937_64 rng(1003);
  bool santalo = true, lower = true;
  double ell_eq = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 4;
    const double hbar = 0.5 + 0.5 * (t % 3);
    const auto e = mahler_volume(EllipsoidBody::make(Space::position, oracle::random_spd(rng, n, 20.0), hbar));
    santalo = santalo && e.mahler <= e.santalo_bound * (1 + 1e-8);
    ell_eq = std::max(ell_eq, std::abs(e.mahler - e.santalo_bound) / e.santalo_bound);
    const auto p = mahler_volume(random_polygon(rng, hbar));
    santalo = santalo && p.mahler <= p.santalo_bound * (1 + 1e-8);
    lower = lower && p.mahler_asserted && p.mahler >= p.mahler_bound * (1 - 1e-8);
    // Independent areas for the polygon and its dual.
    const PolytopeBody other = random_polygon(rng, hbar);
    const std::vector<Vec>& vs = other.vertices();
    const double ref = oracle::polygon_area(vs) * oracle::polygon_area(oracle::planar_polar_vertices(vs, hbar));
    const double lib = mahler_volume(PolytopeBody::from_vertices(Space::position, vs, hbar)).mahler;
    santalo = santalo && std::abs(lib - ref) <= 1e-8 * ref;
  }
  double eq = 0.0;
  for (double hbar : {0.5, 1.0, 2.0}) {
    const auto sq = mahler_volume(PolytopeBody::box(Space::position, v2(0.7, 0.7), hbar));
    eq = std::max(eq, std::abs(sq.mahler - 8.0 * hbar * hbar));
    const auto iv = mahler_volume(PolytopeBody::box(Space::position, Vec::Constant(1, 2.3), hbar));
    eq = std::max(eq, std::abs(iv.mahler - 4.0 * hbar));
  }
  report(3, "Blaschke-Santalo / Mahler", santalo && lower && ell_eq <= 1e-8 && eq <= 1e-10,
         fmt("ellipsoid equality %.3g, square/interval equality %.3g, bounds held %g", ell_eq, eq,
             santalo && lower ? 1.0 : 0.0));
}

void criterion_pre_iwasawa() {
  double recon = 0.0, unique = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const auto s = random_symplectic(2000 + t, n, 0.5);
    const PreIwasawaFactors f = pre_iwasawa(s);
    // Rebuild V_{−P} M_L R with plain matrices.
    const Mat li = f.l.inverse();
    Mat vm = Mat::Zero(2 * n, 2 * n);
    vm.topLeftCorner(n, n) = li;
    vm.bottomLeftCorner(n, n) = f.p * li;
    vm.bottomRightCorner(n, n) = f.l;
    recon = std::max(recon, (vm * f.r.matrix() - s.matrix()).cwiseAbs().maxCoeff());
    // Factors of V_{−P}M_L R' for another rotation R' return (P, L).
    const Mat rot = random_symplectic(t, n, 0.0).matrix() * Generator::fourier(n).matrix().matrix();
    const PreIwasawaFactors g = pre_iwasawa(SymplecticMatrix::from_matrix(vm * rot, 1e-8));
    unique = std::max({unique, (g.p - f.p).cwiseAbs().maxCoeff(), (g.l - f.l).cwiseAbs().maxCoeff()});
  }
  report(4, "pre-Iwasawa factorization", recon <= 1e-9 && unique <= 1e-9,
         fmt("reconstruction %.3g, uniqueness %.3g", recon, unique));
}

void criterion_projection() {
  std::mt19937_64 rng(1005);
  double margin = 1e300;
  int mismatched = 0, saturated = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const bool dilation = t % 4 == 0;
    SymplecticMatrix s = SymplecticMatrix::identity(n);
    if (dilation) {
      s = Generator::dilation(oracle::random_spd(rng, n, 10.0)).matrix();
    } else {
      // Keep a nonzero shear so the blob is genuinely tilted.
      Mat p = random_symmetric(rng, n);
      p += (0.5 + std::abs(p(0, 0))) * Mat::Identity(n, n);
      s = Generator::shear(p).matrix() * random_symplectic(3000 + t, n, 0.4);
    }
    const QuantumBlob blob = blob_from_symplectic(s, 1.0);
    const BlobProjections pr = project_blob(blob);
    // Löwner margin of X^ħ ⊆ P: A⁻¹ − B ⪰ 0 for X = {Ax·x ≤ ħ}, P = {Bp·p ≤ ħ}.
    const Mat gap = pr.x.q.inverse() - pr.p.q;
    margin = std::min(margin, Eigen::SelfAdjointEigenSolver<Mat>(0.5 * (gap + gap.transpose())).eigenvalues().minCoeff());
    if (pr.pair.saturated) ++saturated;
    if (pr.pair.saturated != dilation) ++mismatched;
  }
  report(5, "projection theorem", margin >= -1e-9 && mismatched == 0,
         fmt("min Lowner margin %.3g, saturated %g of 50 M_L cases, mismatches %g", margin, saturated, mismatched));
}

void criterion_theorem5() {
  std::mt19937_64 rng(1006);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  double worst = 0.0;
  bool sat_exact = true;
  for (int t = 0; t < 50; ++t) {
    const double hbar = t % 2 ? 1.0 : 0.5;
    const double a = u(rng);
    const bool sat = t % 5 == 0;
    const double b = sat ? hbar / a : hbar / a * (1.0 + u(rng));
    const auto pc = hz_product_pair(PolytopeBody::box(Space::position, Vec::Constant(1, a), hbar),
                                    PolytopeBody::box(Space::momentum, Vec::Constant(1, b), hbar));
    // Oracle: rectangle area 4ab, λ_max = ab/ħ.
    worst = std::max({worst, std::abs(pc.capacity.value - 4 * a * b), std::abs(pc.capacity.value - 4 * pc.lambda_max * hbar)});
    if (sat) sat_exact = sat_exact && pc.saturated && pc.capacity.value == 4.0 * hbar;
  }
  report(6, "product capacity of interval pairs (n=1)", worst <= 1e-9 && sat_exact,
         fmt("max |c - 4ab| %.3g, saturated exact %g", worst, sat_exact ? 1.0 : 0.0));
}

void criterion_capacity() {
  std::mt19937_64 rng(1007);
  double worst = 0.0, blob = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const double hbar = t % 2 ? 1.0 : 0.6;
    const Mat m = oracle::random_spd(rng, 2 * n, 30.0);
    const double ref = oracle::kPi * hbar / oracle::symplectic_spectrum(m)(0);
    worst = std::max(worst, std::abs(ellipsoid_capacity(PhaseEllipsoid::make(m, hbar)).value - ref) / ref);
    const QuantumBlob b = blob_from_symplectic(random_symplectic(4000 + t, n, 0.7), hbar);
    blob = std::max(blob, std::abs(ellipsoid_capacity(b.ellipsoid()).value - oracle::kPi * hbar));
  }
  report(7, "ellipsoid capacity formula", worst <= 1e-9 && blob <= 1e-9,
         fmt("max rel error vs dense oracle %.3g, max |c(blob) - pi hbar| %.3g", worst, blob));
}

void criterion_quantum_condition() {
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int disagree = 0, wrong_class = 0, passed = 0;
  double rs = 1e300;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 3;
    const double hbar = t % 3 == 0 ? 2.0 : 1.0;
    const bool want_pass = t % 2 == 0;
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = 0.5 * hbar * (1.02 + 2.0 * u(rng));
    if (!want_pass) d(static_cast<int>(rng() % n)) = 0.5 * hbar * (0.05 + 0.93 * u(rng));
    Mat diag = Mat::Zero(2 * n, 2 * n);
    diag.diagonal() << d, d;
    const Mat s = random_symplectic(5000 + t, n, 0.5).matrix();
    Mat sigma = s * diag * s.transpose();
    sigma = 0.5 * (sigma + sigma.transpose());
    const auto v = quantum_condition_check(CovarianceMatrix::make(sigma, hbar));
    const bool by_spectrum = v.min_symplectic_eigenvalue >= 0.5 * hbar;
    const bool by_capacity =
        ellipsoid_capacity(PhaseEllipsoid::make(0.5 * hbar * sigma.inverse(), hbar)).value >= oracle::kPi * hbar;
    if (by_spectrum != by_capacity || v.passes != by_spectrum) ++disagree;
    if (v.passes != want_pass) ++wrong_class;
    if (v.passes) {
      ++passed;
      rs = std::min(rs, v.rs_margins.minCoeff());
    }
  }
  report(8, "quantum condition <=> capacity", disagree == 0 && wrong_class == 0 && rs >= -1e-9,
         fmt("disagreements %g, misclassified %g, min RS margin over passing %.3g", disagree, wrong_class, rs));
}

void criterion_gamma() {
  double round = 0.0, purity = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const double hbar = t % 3 == 0 ? 2.0 : 1.0;
    const QuantumBlob blob = blob_from_symplectic(random_symplectic(6000 + t, n, 0.7), hbar);
    const CovarianceMatrix cov = covariance(blob_to_gaussian(blob));
    // Covariance ellipsoid {(1/2)Σ⁻¹z·z ≤ 1} = {(ħ/2)Σ⁻¹z·z ≤ ħ}.
    round = std::max(round, rel_diff(0.5 * hbar * cov.sigma.inverse(), blob.g()));
    const double target = std::pow(0.5 * hbar, 2 * n);
    purity = std::max(purity, std::abs(cov.sigma.determinant() - target) / target);
  }
  report(9, "blob <-> Gaussian bijection", round <= 1e-9 && purity <= 1e-8,
         fmt("round-trip %.3g, purity rel error %.3g", round, purity));
}

void criterion_hardy() {
  std::mt19937_64 rng(1010);
  int disagree = 0, fails = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const Mat a = oracle::random_spd(rng, n, 5.0);
    Mat b = oracle::random_spd(rng, n, 5.0);
    if (t % 2 == 0) b = 0.8 * a.inverse() + 0.1 * b / oracle::product_spectrum(a, b)(0);
    const HardyReport h = hardy_check(a, b, 1.0);
    const bool pair = quantum_pair_check(EllipsoidBody::make(Space::position, a, 1.0),
                                         EllipsoidBody::make(Space::momentum, b, 1.0))
                          .holds;
    if ((h.regime != HardyRegime::fail) != pair) ++disagree;
    if ((h.regime == HardyRegime::fail) != (oracle::product_spectrum(a, b)(0) > 1.0)) ++disagree;
    if (h.regime == HardyRegime::fail) ++fails;
  }
  report(10, "Hardy equivalence", disagree == 0, fmt("disagreements %g (%g fail regimes of 100)", disagree, fails));
}

void criterion_concentration() {
  const SampledFunction g = sample_gaussian(1.0, 0.0, 1.0, default_half_width(1.0));
  const double eps = concentration(g, 1.0);
  const double target = std::sqrt(1.0 - std::erf(1.0));
  const double err = std::abs(eps - target);

  std::mt19937_64 rng(1011);
  std::uniform_real_distribution<double> u(0.1, 2.5);
  int inconsistent = 0;
  for (int t = 0; t < 50; ++t) {
    SampledFunction f = t % 5 == 4 ? sample_hermite(static_cast<int>(rng() % 6), 1.0, 16.0)
                                   : sample_gaussian(u(rng), u(rng) - 1.2, 1.0, 40.0);
    const SampledFunction ft = hbar_fourier(f);
    const double a = u(rng), b = u(rng);
    const auto ds = donoho_stark_check(concentration(f, a), concentration(ft, b), Vec::Constant(1, a),
                                       Vec::Constant(1, b), 1.0);
    if (!ds.consistent) ++inconsistent;
  }
  const double rhs = polar_concentration_bound(1, 1.0, 0.0, 0.0).rhs;
  report(11, "concentration", err <= 1e-6 && inconsistent == 0 && std::abs(rhs - 4.0) <= 1e-14,
         fmt("|eps - sqrt(1-erf 1)| %.3g, DS inconsistencies %g, polar rhs %.17g", err, inconsistent, rhs));
}

void criterion_gromov() {
  std::mt19937_64 rng(1012);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 1e300;
  int eq_found = 0, eq_cases = 0, spurious = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 2;
    const double r = 0.5 + 0.25 * (t % 4);
    const bool block = t % 5 == 0;
    Mat s;
    if (block) {
      // Independent SL(2) blocks on each (x_j, p_j) plane.
      s = Mat::Zero(2 * n, 2 * n);
      for (int j = 0; j < n; ++j) {
        const double a = std::exp(u(rng)), c = u(rng), d = u(rng);
        Eigen::Matrix2d m;
        m << a, d, c, (1.0 + c * d) / a;
        s(j, j) = m(0, 0);
        s(j, n + j) = m(0, 1);
        s(n + j, j) = m(1, 0);
        s(n + j, n + j) = m(1, 1);
      }
    } else {
      s = random_symplectic(7000 + t, n, 0.6).matrix();
    }
    const auto sm = SymplecticMatrix::from_matrix(s, 1e-9);
    for (int j = 1; j <= n; ++j) {
      const ProjectionArea pa = projection_area_check(sm, r, j);
      worst = std::min(worst, pa.area - oracle::kPi * r * r);
      if (block) {
        ++eq_cases;
        if (pa.equality) ++eq_found;
      } else if (pa.equality) {
        ++spurious;
      }
    }
  }
  report(12, "Gromov projection bound", worst >= -1e-9 && eq_found == eq_cases,
         fmt("min area - pi R^2 %.3g, equality detected %g of %g block cases", worst, eq_found, eq_cases) +
             fmt(", %g equalities off the block cases", spurious));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<void (*)()> criteria = {
      criterion_polar_suite, criterion_ball_self_duality, criterion_mahler, criterion_pre_iwasawa,
      criterion_projection,  criterion_theorem5,          criterion_capacity, criterion_quantum_condition,
      criterion_gamma,       criterion_hardy,             criterion_concentration, criterion_gromov};
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "criterion raised", false, e.what());
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failures, criteria.size(), secs);
  return failures == 0 ? 0 : 1;
}
