#include "symplecta/capacities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "symplecta/error.hpp"

namespace symplecta {

namespace {

constexpr double kPi = std::numbers::pi;

double cross(const Vec& o, const Vec& a, const Vec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Andrew's monotone chain, counter-clockwise.
std::vector<Vec> convex_hull_2d(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

const char* to_string(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::ellipsoid_formula: return "ellipsoid_formula";
    case CapacityMethod::planar_area: return "planar_area";
    case CapacityMethod::product_formula: return "product_formula";
  }
  return "unknown";
}

CapacityValue ellipsoid_capacity(const PhaseEllipsoid& e) {
  require_even_square(e.m, "ellipsoid_capacity");
  require_spd(e.m, "ellipsoid_capacity");
  const Vec spectrum = symplectic_eigenvalues(e.m);
  return {kPi * e.hbar / spectrum(0), CapacityMethod::ellipsoid_formula, e.hbar};
}

CapacityValue hz_planar(const PhaseEllipsoid& e) {
  if (e.m.rows() != 2 || e.m.cols() != 2) {
    throw Error(ErrorKind::dimension, "hz_planar: ellipse must live in a 2-dimensional phase space");
  }
  require_spd(e.m, "hz_planar");
  return {kPi * e.hbar / std::sqrt(e.m.determinant()), CapacityMethod::planar_area, e.hbar};
}

CapacityValue hz_planar(const Polygon& k, double hbar) {
  for (const Vec& v : k.vertices) {
    if (v.size() != 2) throw Error(ErrorKind::dimension, "hz_planar: polygon vertices must be planar");
  }
  const std::vector<Vec> hull = convex_hull_2d(k.vertices);
  if (hull.size() < 3) throw Error(ErrorKind::degeneracy, "hz_planar: polygon is flat");
  const Vec origin = Vec::Zero(2);
  double area = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec& a = hull[i];
    const Vec& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, origin) <= 0.0) {
      throw Error(ErrorKind::contract, "hz_planar: origin is not interior to the polygon");
    }
    area += a(0) * b(1) - a(1) * b(0);
  }
  return {0.5 * area, CapacityMethod::planar_area, hbar};
}

ProductCapacity hz_product_pair(const ConvexBody& x, const ConvexBody& p, double tol) {
  const QuantumPairReport pair = quantum_pair_check(x, p, tol);
  if (!pair.holds) {
    throw Error(ErrorKind::domain, "hz_product_pair: (X, P) is not a quantum polar pair",
                {{"lambda_max", pair.lambda_max}}, pair.witness);
  }
  const double closed = lambda_max_closed_form(x, p);
  const double bisected = lambda_max_bisection(x, p);
  if (std::abs(closed - bisected) > 1e-8 * closed) {
    throw Error(ErrorKind::internal, "hz_product_pair: lambda_max routes disagree",
                {{"closed_form", closed}, {"bisection", bisected}});
  }
  const double hbar = hbar_of(x);
  ProductCapacity out;
  out.lambda_max = pair.lambda_max;
  out.saturated = pair.saturated;
  out.capacity = {pair.saturated ? 4.0 * hbar : 4.0 * pair.lambda_max * hbar,
                  CapacityMethod::product_formula, hbar};
  out.planar_area = std::numeric_limits<double>::quiet_NaN();
  if (dim_of(x) == 1) {
    const Vec e = Vec::Ones(1);
    out.planar_area = 4.0 * support_function(x, e) * support_function(p, e);
    const double slack = 4.0 * hbar * (1e-9 + (pair.saturated ? tol : 0.0)) * out.lambda_max;
    if (std::abs(out.planar_area - out.capacity.value) > slack) {
      throw Error(ErrorKind::internal, "hz_product_pair: product formula disagrees with planar area",
                  {{"capacity", out.capacity.value}, {"area", out.planar_area}});
    }
  }
  return out;
}

ProjectionArea projection_area_check(const SymplecticMatrix& s, double radius, int j, double tol) {
  const int n = s.n();
  if (j < 1 || j > n) {
    throw Error(ErrorKind::dimension, "projection_area_check: plane index out of range",
                {{"j", static_cast<double>(j)}, {"n", static_cast<double>(n)}});
  }
  if (!(radius > 0.0)) throw Error(ErrorKind::domain, "projection_area_check: radius must be positive");
  const Mat gram = s.matrix() * s.matrix().transpose();
  Mat sub(2, 2);
  sub << gram(j - 1, j - 1), gram(j - 1, n + j - 1), gram(n + j - 1, j - 1), gram(n + j - 1, n + j - 1);
  ProjectionArea out;
  out.bound = kPi * radius * radius;
  out.area = out.bound * std::sqrt(sub.determinant());
  out.passes = out.area >= out.bound - tol;
  out.equality = std::abs(out.area - out.bound) <= tol * std::max(1.0, out.bound);
  return out;
}

}  // namespace symplecta
