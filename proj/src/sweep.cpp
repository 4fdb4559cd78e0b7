#include "symplecta/sweep.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "detail.hpp"
#include "symplecta/blobs.hpp"
#include "symplecta/capacities.hpp"
#include "symplecta/concentration.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/states.hpp"

namespace symplecta {

namespace {

constexpr double kPi = std::numbers::pi;

class Rows {
 public:
  Rows(std::string suite, std::uint64_t seed) : suite_(std::move(suite)), seed_(seed) {}

  void equal(const std::string& property, double measured, double bound, double tol) {
    const double margin = std::abs(measured - bound);
    add(property, measured, bound, margin, margin <= tol);
  }
  void at_most(const std::string& property, double measured, double bound, double tol) {
    const double margin = bound - measured;
    add(property, measured, bound, margin, margin >= -tol);
  }
  void at_least(const std::string& property, double measured, double bound, double tol) {
    const double margin = measured - bound;
    add(property, measured, bound, margin, margin >= -tol);
  }
  void add(const std::string& property, double measured, double bound, double margin, bool pass) {
    rows_.push_back({suite_, property, seed_, measured, bound, margin, pass});
  }

  std::vector<SweepRow> take() { return std::move(rows_); }

 private:
  std::string suite_;
  std::uint64_t seed_;
  std::vector<SweepRow> rows_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double rel_diff(const Mat& a, const Mat& b) {
  return max_abs(a - b) / std::max(1e-300, max_abs(b));
}

PolytopeBody random_polygon(std::mt19937_64& rng, Space space, double hbar) {
  const int k = 3 + static_cast<int>(rng() % 4);
  std::vector<Vec> gens;
  for (int i = 0; i < k; ++i) {
    const double angle = kPi * (i + uniform(rng, 0.1, 0.9)) / k;
    const double r = uniform(rng, 0.5, 2.0);
    gens.push_back(Vec(Eigen::Vector2d(r * std::cos(angle), r * std::sin(angle))));
  }
  return PolytopeBody::symmetric_hull(space, gens, hbar);
}

std::vector<Vec> sample_directions(int dim, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<Vec> dirs;
  for (int i = 0; i < count; ++i) {
    Vec d(dim);
    for (int k = 0; k < dim; ++k) d(k) = normal(rng);
    dirs.push_back(d.normalized());
  }
  return dirs;
}

double support_discrepancy(const ConvexBody& a, const ConvexBody& b, const std::vector<Vec>& dirs) {
  double worst = 0.0;
  for (const Vec& d : dirs) {
    const double hb = support_function(b, d);
    worst = std::max(worst, std::abs(support_function(a, d) - hb) / hb);
  }
  return worst;
}

// ((E, F), (−F, E)) with E + iF a random unitary.
Mat random_rotation(std::mt19937_64& rng, int n) {
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) z(i, k) = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(z).householderQ();
  Mat r(2 * n, 2 * n);
  r << u.real(), u.imag(), -u.imag(), u.real();
  return r;
}

// Σ = S diag(Λ, Λ) Sᵀ with min Λ either above or below ħ/2.
Mat random_covariance(std::mt19937_64& rng, std::uint64_t seed, int n, double hbar, bool quantum,
                      double* min_lambda) {
  Vec lambda(n);
  for (int j = 0; j < n; ++j) lambda(j) = 0.5 * hbar * uniform(rng, 1.0, 3.0);
  if (!quantum) lambda(rng() % n) = 0.5 * hbar * uniform(rng, 0.2, 0.95);
  *min_lambda = lambda.minCoeff();
  const Mat s = random_symplectic(seed ^ 0x9e3779b97f4a7c15ULL, n, 0.6).matrix();
  Vec diag(2 * n);
  diag << lambda, lambda;
  return symmetrize(s * diag.asDiagonal() * s.transpose());
}

void polar_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 4);
  const EllipsoidBody x = EllipsoidBody::make(Space::position, detail::random_spd(rng, n, 2.0), hbar);
  const ConvexBody xb = x;
  const EllipsoidBody dual = std::get<EllipsoidBody>(polar_dual(xb));
  const EllipsoidBody bidual = std::get<EllipsoidBody>(polar_dual(dual));
  rows.equal("ellipsoid_biduality", rel_diff(bidual.q, x.q), 0.0, 1e-9);

  const double grow = uniform(rng, 1.1, 2.0);
  const ConvexBody y = scaled(xb, grow);
  rows.at_most("ellipsoid_antimonotonicity", contains(polar_dual(xb), polar_dual(y)).ratio, 1.0, 1e-9);

  const double lambda = uniform(rng, 0.5, 3.0);
  const EllipsoidBody dual_scaled = std::get<EllipsoidBody>(polar_dual(scaled(xb, lambda)));
  const EllipsoidBody scaled_dual = std::get<EllipsoidBody>(scaled(polar_dual(xb), 1.0 / lambda));
  rows.equal("ellipsoid_scaling", rel_diff(dual_scaled.q, scaled_dual.q), 0.0, 1e-9);

  const MahlerReport me = mahler_volume(xb);
  rows.equal("ellipsoid_santalo_equality", me.mahler / me.santalo_bound, 1.0, 1e-8);

  const ConvexBody poly = random_polygon(rng, Space::position, hbar);
  const auto dirs = sample_directions(2, 64, rng);
  rows.equal("polygon_biduality", support_discrepancy(polar_dual(polar_dual(poly)), poly, dirs), 0.0,
             1e-9);
  rows.at_most("polygon_antimonotonicity",
               contains(polar_dual(poly), polar_dual(scaled(poly, grow))).ratio, 1.0, 1e-9);
  rows.equal("polygon_scaling",
             support_discrepancy(polar_dual(scaled(poly, lambda)), scaled(polar_dual(poly), 1.0 / lambda),
                                 dirs),
             0.0, 1e-9);
  const MahlerReport mp = mahler_volume(poly);
  rows.at_most("polygon_santalo", mp.mahler / mp.santalo_bound, 1.0, 1e-8);
  rows.at_least("polygon_mahler_lower", mp.mahler / mp.mahler_bound, 1.0, 1e-8);

  const double h = std::array{0.5, 1.0, 2.0}[seed % 3];
  const ConvexBody ball = EllipsoidBody::ball(Space::position, n, std::sqrt(h), h);
  const EllipsoidBody ball_dual = std::get<EllipsoidBody>(polar_dual(ball));
  rows.equal("ball_self_duality", max_abs(ball_dual.q - Mat::Identity(n, n)), 0.0, 1e-12);
}

void symplectic_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  (void)hbar;
  const int n = 1 + static_cast<int>(seed % 3);
  const SymplecticMatrix s = random_symplectic(seed, n, 1.0);
  const double scale = std::max(1.0, max_abs(s.matrix()));
  rows.at_most("symplectic_residual", is_symplectic(s.matrix(), 1.0).residual / (scale * scale), 0.0,
               1e-12);

  const PreIwasawaFactors f = pre_iwasawa(s);
  rows.equal("pre_iwasawa_reconstruction", max_abs(f.reconstruct() - s.matrix()), 0.0, 1e-9);

  const Mat p = symmetrize(detail::uniform_matrix(rng, n, n));
  const Mat l = detail::random_spd(rng, n, 1.0);
  const Mat r = random_rotation(rng, n);
  const Mat built = shear_matrix(-p) * dilation_matrix(l) * r;
  const PreIwasawaFactors g = pre_iwasawa(detail::computed_symplectic(built));
  const double err = std::max({max_abs(g.p - p), max_abs(g.l - l), max_abs(g.r.matrix() - r)});
  rows.equal("pre_iwasawa_uniqueness", err, 0.0, 1e-9);

  const Mat m = detail::random_spd(rng, 2 * n, 2.0);
  rows.equal("williamson_residual", williamson(m).residual / max_abs(m), 0.0, 1e-9);
}

void blobs_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 3);
  const QuantumBlob blob = blob_from_symplectic(random_symplectic(seed, n, 0.8), hbar);
  const BlobProjections proj = project_blob(blob);
  rows.at_least("projection_quantum_pair", proj.pair.lambda_max, 1.0, 1e-9);

  const Mat l = detail::random_spd(rng, n, 1.5);
  const QuantumBlob ml = blob_from_symplectic(detail::computed_symplectic(dilation_matrix(l)), hbar);
  const BlobProjections mproj = project_blob(ml);
  rows.add("projection_saturation_ML", mproj.pair.lambda_max, 1.0,
           std::abs(mproj.pair.lambda_max - 1.0), mproj.saturated && mproj.pair.saturated);

  rows.equal("blob_volume", blob.volume() / blob_volume(n, hbar), 1.0, 1e-9);

  const CovarianceMatrix cov = covariance(blob_to_gaussian(blob));
  const Mat form = 0.5 * hbar * spd_inverse(cov.sigma);
  rows.equal("gamma_roundtrip", rel_diff(form, blob.g()), 0.0, 1e-9);
  rows.equal("gaussian_purity", cov.sigma.determinant() / std::pow(0.5 * hbar, 2 * n), 1.0, 1e-8);
}

void theorem5_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const double a = std::exp(uniform(rng, -1.0, 1.0));
  const double t = seed % 4 == 0 ? 1.0 : uniform(rng, 1.0, 3.0);
  const double b = t * hbar / a;
  ConvexBody x, p;
  if (seed % 2 == 0) {
    x = PolytopeBody::box(Space::position, Vec::Constant(1, a), hbar);
    p = PolytopeBody::box(Space::momentum, Vec::Constant(1, b), hbar);
  } else {
    x = EllipsoidBody::make(Space::position, Mat::Constant(1, 1, hbar / (a * a)), hbar);
    p = EllipsoidBody::make(Space::momentum, Mat::Constant(1, 1, hbar / (b * b)), hbar);
  }
  const ProductCapacity c = hz_product_pair(x, p);
  const Polygon rect{{Vec(Eigen::Vector2d(a, b)), Vec(Eigen::Vector2d(-a, b)),
                      Vec(Eigen::Vector2d(-a, -b)), Vec(Eigen::Vector2d(a, -b))}};
  // The product rectangle's area is an independent route to 4λ_max ħ.
  rows.equal("product_formula", c.capacity.value, hz_planar(rect, hbar).value,
             1e-9 * std::max(1.0, c.capacity.value));
}

void capacities_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 3);
  const PhaseEllipsoid e = PhaseEllipsoid::make(detail::random_spd(rng, 2 * n, 2.0), hbar);
  const double c = ellipsoid_capacity(e).value;

  const SymplecticMatrix s = random_symplectic(seed, n, 0.6);
  const Mat s_inv = symplectic_inverse(s).matrix();
  const double cs =
      ellipsoid_capacity(PhaseEllipsoid::make(symmetrize(s_inv.transpose() * e.m * s_inv), hbar)).value;
  rows.equal("symplectic_invariance", cs / c, 1.0, 1e-8);

  for (double lambda : {0.5, 2.0, 3.0}) {
    const double cl = ellipsoid_capacity(PhaseEllipsoid::make(e.m / (lambda * lambda), hbar)).value;
    rows.equal("conformality_ellipsoid", cl / (lambda * lambda * c), 1.0, 1e-9);
  }

  const Mat v = detail::uniform_matrix(rng, 2 * n, 2 * n);
  const double c_inner = ellipsoid_capacity(PhaseEllipsoid::make(e.m + v * v.transpose(), hbar)).value;
  rows.at_most("monotonicity", c_inner, c, 1e-9);

  const PhaseEllipsoid ellipse = PhaseEllipsoid::make(detail::random_spd(rng, 2, 2.0), hbar);
  rows.equal("planar_agreement", hz_planar(ellipse).value, ellipsoid_capacity(ellipse).value, 1e-9);

  const ConvexBody poly = random_polygon(rng, Space::position, hbar);
  const Polygon k{std::get<PolytopeBody>(poly).vertices()};
  const double area = hz_planar(k, hbar).value;
  Polygon k2 = k;
  for (Vec& w : k2.vertices) w *= 2.0;
  rows.equal("conformality_polygon", hz_planar(k2, hbar).value / (4.0 * area), 1.0, 1e-9);

  const QuantumBlob blob = blob_from_symplectic(s, hbar);
  rows.equal("blob_capacity", ellipsoid_capacity(blob.ellipsoid()).value, kPi * hbar, 1e-9);

  const Mat a = detail::random_spd(rng, n, 1.5);
  const JohnOfPair john = john_of_pair(EllipsoidBody::make(Space::position, a, hbar),
                                       EllipsoidBody::make(Space::momentum, spd_inverse(a), hbar));
  rows.equal("john_capacity", ellipsoid_capacity(john.ellipsoid).value, kPi * hbar, 1e-9);
}

void quantum_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 3);
  const bool quantum = seed % 2 == 0;
  double min_lambda = 0.0;
  const CovarianceMatrix cov{random_covariance(rng, seed, n, hbar, quantum, &min_lambda), hbar};
  const QuantumVerdict v = quantum_condition_check(cov);
  const bool by_capacity = v.capacity >= kPi * hbar;
  rows.add("criterion_agreement", v.capacity, kPi * hbar, v.capacity - kPi * hbar,
           by_capacity == v.passes && v.passes == quantum);
  rows.equal("min_symplectic_eigenvalue", v.min_symplectic_eigenvalue / min_lambda, 1.0, 1e-9);
}

void rs_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 3);
  double min_lambda = 0.0;
  const CovarianceMatrix cov{random_covariance(rng, seed, n, hbar, true, &min_lambda), hbar};
  rows.at_least("rs_margin_min", robertson_schrodinger_check(cov).minCoeff(), 0.0, 1e-9);

  const QuantumBlob blob = blob_from_symplectic(random_symplectic(seed, n, 0.6), hbar);
  const CovarianceMatrix pure = covariance(blob_to_gaussian(blob));
  rows.at_least("rs_margin_pure", robertson_schrodinger_check(pure).minCoeff(), 0.0, 1e-9);
}

void hardy_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(seed % 3);
  const Mat a = detail::random_spd(rng, n, 1.5);
  Mat b;
  if (seed % 5 == 0) {
    b = spd_inverse(a);
  } else {
    b = detail::random_spd(rng, n, 1.5);
    const Mat ra = spd_sqrt(a);
    b *= uniform(rng, 0.5, 1.5) / max_eigenvalue(symmetrize(ra * b * ra));
  }
  const HardyReport r = hardy_check(a, b, hbar);
  const bool by_eigs = r.eigs(0) <= 1.0 + 1e-9;
  rows.add("regime_matches_pair", r.eigs(0), 1.0, 1.0 - r.eigs(0), by_eigs == r.polar_equivalent);
}

void gromov_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  (void)hbar;
  const int n = 2 + static_cast<int>(seed % 2);
  const SymplecticMatrix s = random_symplectic(seed, n, 0.8);
  const double radius = std::exp(uniform(rng, -1.0, 1.0));
  for (int j = 1; j <= n; ++j) {
    const ProjectionArea pa = projection_area_check(s, radius, j);
    rows.at_least("projected_area", pa.area, pa.bound, 1e-9);
  }
  Vec d(n);
  for (int j = 0; j < n; ++j) d(j) = std::exp(uniform(rng, -1.0, 1.0));
  const SymplecticMatrix block = detail::computed_symplectic(dilation_matrix(d.asDiagonal()));
  for (int j = 1; j <= n; ++j) {
    const ProjectionArea pa = projection_area_check(block, radius, j);
    rows.add("equality_block_diagonal", pa.area, pa.bound, std::abs(pa.area - pa.bound), pa.equality);
  }
}

void concentration_suite(Rows& rows, std::uint64_t seed, double hbar, std::mt19937_64& rng) {
  const int m = static_cast<int>(seed % 6);
  const double scale = std::sqrt(hbar * (2 * m + 1));
  const SampledFunction f = sample_hermite(m, hbar, default_half_width(scale));
  const SampledFunction g = hbar_fourier(f);
  rows.equal("parseval", g.norm(), f.norm(), 1e-6);

  const std::complex<double> phase = std::pow(std::complex<double>(0.0, -1.0), m);
  double worst = 0.0;
  for (int k = 0; k < g.size(); ++k) {
    worst = std::max(worst, std::abs(g.values(k) - phase * hermite_function(m, hbar, g.point(k))));
  }
  rows.equal("hermite_eigenfunction", worst, 0.0, 1e-5);

  const double a = uniform(rng, 0.2, 3.0) * std::sqrt(hbar);
  const double b = uniform(rng, 0.2, 3.0) * std::sqrt(hbar);
  const double ex = concentration(f, a), ep = concentration(g, b);
  const DonohoStarkReport ds =
      donoho_stark_check(ex, ep, Vec::Constant(1, a), Vec::Constant(1, b), hbar);
  rows.add("donoho_stark", ds.lhs, ds.rhs, ds.lhs - ds.rhs, ds.consistent);
}

using SuiteFn = void (*)(Rows&, std::uint64_t, double, std::mt19937_64&);

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table = {
      {"polar", polar_suite},           {"symplectic", symplectic_suite},
      {"blobs", blobs_suite},           {"theorem5", theorem5_suite},
      {"capacities", capacities_suite}, {"quantum", quantum_suite},
      {"rs", rs_suite},                 {"hardy", hardy_suite},
      {"gromov", gromov_suite},         {"concentration", concentration_suite}};
  return table;
}

}  // namespace

const std::vector<std::string>& sweep_suites() {
  static const std::vector<std::string> names = {"polar",      "symplectic", "blobs", "theorem5",
                                                  "capacities", "quantum",    "rs",    "hardy",
                                                  "gromov",     "concentration"};
  return names;
}

std::vector<SweepRow> run_suite(const std::string& suite, std::uint64_t seed, double hbar) {
  const auto it = suite_table().find(suite);
  if (it == suite_table().end()) throw std::invalid_argument("unknown sweep suite: " + suite);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(std::distance(
                        sweep_suites().begin(),
                        std::find(sweep_suites().begin(), sweep_suites().end(), suite)))};
  std::mt19937_64 rng(seq);
  Rows rows(suite, seed);
  it->second(rows, seed, hbar, rng);
  return rows.take();
}

std::vector<SweepRow> run_sweep(const std::vector<std::string>& suites, std::uint64_t first,
                                std::uint64_t last, double hbar) {
  std::vector<std::string> expanded;
  for (const std::string& s : suites) {
    if (s == "all") {
      expanded.insert(expanded.end(), sweep_suites().begin(), sweep_suites().end());
    } else {
      if (!suite_table().count(s)) throw std::invalid_argument("unknown sweep suite: " + s);
      expanded.push_back(s);
    }
  }
  std::vector<SweepRow> out;
  for (const std::string& s : expanded) {
    for (std::uint64_t seed = first; seed <= last; ++seed) {
      auto rows = run_suite(s, seed, hbar);
      out.insert(out.end(), rows.begin(), rows.end());
      if (seed == last) break;
    }
  }
  return out;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::string out = "suite,property,seed,measured,bound,margin,pass\n";
  char buf[128];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof buf, ",%llu,%.17g,%.17g,%.17g,", static_cast<unsigned long long>(r.seed),
                  r.measured, r.bound, r.margin);
    out += r.suite + "," + r.property + buf + (r.pass ? "pass" : "fail") + "\n";
  }
  return out;
}

}  // namespace symplecta
