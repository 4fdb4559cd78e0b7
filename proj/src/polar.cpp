#include "symplecta/polar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hull.hpp"
#include "symplecta/error.hpp"

namespace symplecta {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_hbar(double hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw Error(ErrorKind::domain, "hbar must be positive and finite", {{"hbar", hbar}});
  }
}

double max_dot(const std::vector<Vec>& points, const Vec& d) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec& v : points) best = std::max(best, d.dot(v));
  return best;
}

// Normalized form {u : Q' u·u ≤ 1}.
Mat unit_level_form(const EllipsoidBody& e) { return e.q / e.hbar; }

void require_same_dim(const ConvexBody& a, const ConvexBody& b, const char* what) {
  if (dim_of(a) != dim_of(b)) {
    throw Error(ErrorKind::dimension, std::string(what) + ": bodies have different dimensions");
  }
}

}  // namespace

Space flipped(Space s) { return s == Space::position ? Space::momentum : Space::position; }

const char* to_string(Space s) { return s == Space::position ? "x" : "p"; }

EllipsoidBody EllipsoidBody::make(Space space, Mat q, double hbar) {
  require_hbar(hbar);
  require_spd(q, "ellipsoid body");
  return {space, symmetrize(q), hbar};
}

EllipsoidBody EllipsoidBody::ball(Space space, int dim, double radius, double hbar) {
  if (!(radius > 0.0)) throw Error(ErrorKind::degeneracy, "ball radius must be positive");
  return make(space, Mat::Identity(dim, dim) * (hbar / (radius * radius)), hbar);
}

PolytopeBody PolytopeBody::from_vertices(Space space, std::vector<Vec> vertices, double hbar) {
  require_hbar(hbar);
  if (vertices.empty()) throw Error(ErrorKind::degeneracy, "polytope: no vertices");
  const auto d = vertices.front().size();
  if (d == 0) throw Error(ErrorKind::dimension, "polytope: zero-dimensional vertices");
  double scale = 0.0;
  for (const Vec& v : vertices) {
    if (v.size() != d) throw Error(ErrorKind::dimension, "polytope: vertices differ in dimension");
    scale = std::max(scale, v.norm());
  }
  for (const Vec& v : vertices) {
    const bool mirrored = std::any_of(vertices.begin(), vertices.end(), [&](const Vec& w) {
      return (v + w).norm() <= 1e-9 * std::max(1.0, scale);
    });
    if (!mirrored) {
      throw Error(ErrorKind::contract, "polytope: vertex set is not symmetric under v -> -v",
                  {}, v);
    }
  }
  std::vector<Vec> with_origin = vertices;
  with_origin.push_back(Vec::Zero(d));
  if (detail::affine_rank(with_origin, 1e-10 * std::max(1.0, scale)) < static_cast<int>(d) ||
      detail::affine_rank(vertices, 1e-10 * std::max(1.0, scale)) < static_cast<int>(d)) {
    throw Error(ErrorKind::degeneracy, "polytope: vertices do not span the space");
  }
  const auto facets = detail::enumerate_facets(vertices, Vec::Zero(d));
  if (facets.empty()) throw Error(ErrorKind::degeneracy, "polytope: no facets found");

  std::vector<bool> on_boundary(vertices.size(), false);
  std::vector<Vec> normals;
  normals.reserve(facets.size());
  for (const auto& f : facets) {
    normals.push_back(f.normal);
    for (int i : f.incident) on_boundary[i] = true;
  }
  std::vector<Vec> kept;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!on_boundary[i]) continue;
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Vec& w) {
      return (vertices[i] - w).norm() <= 1e-12 * std::max(1.0, scale);
    });
    if (!duplicate) kept.push_back(vertices[i]);
  }
  return PolytopeBody(space, std::move(kept), std::move(normals), hbar);
}

PolytopeBody PolytopeBody::symmetric_hull(Space space, const std::vector<Vec>& generators,
                                          double hbar) {
  std::vector<Vec> all;
  all.reserve(2 * generators.size());
  for (const Vec& g : generators) {
    all.push_back(g);
    all.push_back(-g);
  }
  return from_vertices(space, std::move(all), hbar);
}

PolytopeBody PolytopeBody::box(Space space, const Vec& half_widths, double hbar) {
  const auto d = half_widths.size();
  if (d == 0 || (half_widths.array() <= 0.0).any()) {
    throw Error(ErrorKind::degeneracy, "box: half widths must be positive");
  }
  std::vector<Vec> vertices;
  for (long mask = 0; mask < (1L << d); ++mask) {
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = (mask >> i & 1) ? half_widths(i) : -half_widths(i);
    vertices.push_back(v);
  }
  std::vector<Vec> normals;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec a = Vec::Zero(d);
    a(i) = 1.0 / half_widths(i);
    normals.push_back(a);
    normals.push_back(-a);
  }
  return from_representations(space, std::move(vertices), std::move(normals), hbar);
}

PolytopeBody PolytopeBody::from_representations(Space space, std::vector<Vec> vertices,
                                                std::vector<Vec> normals, double hbar) {
  require_hbar(hbar);
  if (vertices.empty() || normals.empty()) {
    throw Error(ErrorKind::degeneracy, "polytope: empty representation");
  }
  const auto d = vertices.front().size();
  for (const Vec& v : vertices)
    if (v.size() != d) throw Error(ErrorKind::dimension, "polytope: vertices differ in dimension");
  for (const Vec& a : normals)
    if (a.size() != d) throw Error(ErrorKind::dimension, "polytope: normals differ in dimension");
  constexpr double tol = 1e-9;
  for (const Vec& a : normals) {
    const double h = max_dot(vertices, a);
    if (std::abs(h - 1.0) > tol) {
      throw Error(ErrorKind::contract,
                  "polytope: vertex and halfspace representations disagree",
                  {{"support_at_normal", h}}, a);
    }
  }
  return PolytopeBody(space, std::move(vertices), std::move(normals), hbar);
}

Space space_of(const ConvexBody& body) {
  return std::visit(Overloaded{[](const EllipsoidBody& e) { return e.space; },
                               [](const PolytopeBody& p) { return p.space(); }},
                    body);
}

double hbar_of(const ConvexBody& body) {
  return std::visit(Overloaded{[](const EllipsoidBody& e) { return e.hbar; },
                               [](const PolytopeBody& p) { return p.hbar(); }},
                    body);
}

int dim_of(const ConvexBody& body) {
  return std::visit(Overloaded{[](const EllipsoidBody& e) { return e.dim(); },
                               [](const PolytopeBody& p) { return p.dim(); }},
                    body);
}

ConvexBody transformed(const ConvexBody& body, const Mat& l) {
  require_square(l, "transformed");
  if (l.rows() != dim_of(body)) throw Error(ErrorKind::dimension, "transformed: size mismatch");
  Eigen::FullPivLU<Mat> lu(l);
  if (!lu.isInvertible()) throw Error(ErrorKind::degeneracy, "transformed: map is singular");
  const Mat l_inv = lu.inverse();
  return std::visit(
      Overloaded{[&](const EllipsoidBody& e) -> ConvexBody {
                   return EllipsoidBody{e.space, symmetrize(l_inv.transpose() * e.q * l_inv),
                                        e.hbar};
                 },
                 [&](const PolytopeBody& p) -> ConvexBody {
                   std::vector<Vec> vs, ns;
                   for (const Vec& v : p.vertices()) vs.push_back(l * v);
                   for (const Vec& a : p.normals()) ns.push_back(l_inv.transpose() * a);
                   return PolytopeBody::from_representations(p.space(), std::move(vs),
                                                             std::move(ns), p.hbar());
                 }},
      body);
}

ConvexBody scaled(const ConvexBody& body, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorKind::degeneracy, "scaled: factor must be positive");
  return std::visit(
      Overloaded{[&](const EllipsoidBody& e) -> ConvexBody {
                   return EllipsoidBody{e.space, e.q / (lambda * lambda), e.hbar};
                 },
                 [&](const PolytopeBody& p) -> ConvexBody {
                   std::vector<Vec> vs, ns;
                   for (const Vec& v : p.vertices()) vs.push_back(lambda * v);
                   for (const Vec& a : p.normals()) ns.push_back(a / lambda);
                   return PolytopeBody::from_representations(p.space(), std::move(vs),
                                                             std::move(ns), p.hbar());
                 }},
      body);
}

ConvexBody polar_dual(const ConvexBody& body) {
  return std::visit(
      Overloaded{[](const EllipsoidBody& e) -> ConvexBody {
                   if (!is_spd(e.q)) {
                     throw Error(ErrorKind::degeneracy, "polar_dual: ellipsoid is flat",
                                 {{"min_eigenvalue", min_eigenvalue(e.q)}});
                   }
                   return EllipsoidBody{flipped(e.space), spd_inverse(e.q), e.hbar};
                 },
                 [](const PolytopeBody& p) -> ConvexBody {
                   // Facet a·x ≤ 1 becomes the vertex ħa; vertex v becomes the facet v·p ≤ ħ.
                   std::vector<Vec> vs, ns;
                   for (const Vec& a : p.normals()) vs.push_back(p.hbar() * a);
                   for (const Vec& v : p.vertices()) ns.push_back(v / p.hbar());
                   return PolytopeBody::from_representations(flipped(p.space()), std::move(vs),
                                                             std::move(ns), p.hbar());
                 }},
      body);
}

double support_function(const ConvexBody& body, const Vec& direction) {
  if (direction.size() != dim_of(body)) {
    throw Error(ErrorKind::dimension, "support_function: direction has wrong dimension");
  }
  if (direction.norm() == 0.0) throw Error(ErrorKind::domain, "support_function: zero direction");
  return std::visit(
      Overloaded{[&](const EllipsoidBody& e) {
                   const Vec w = e.q.llt().solve(direction);
                   return std::sqrt(e.hbar * direction.dot(w));
                 },
                 [&](const PolytopeBody& p) { return max_dot(p.vertices(), direction); }},
      body);
}

Containment contains(const ConvexBody& outer, const ConvexBody& inner, double tol) {
  require_same_dim(outer, inner, "contains");
  Containment out;
  if (const auto* eo = std::get_if<EllipsoidBody>(&outer)) {
    const Mat qo = unit_level_form(*eo);
    if (const auto* ei = std::get_if<EllipsoidBody>(&inner)) {
      // sup_d h_in(d)²/h_out(d)² is the top eigenvalue of Qo^{1/2} Qi^{-1} Qo^{1/2}.
      const Mat root = spd_sqrt(qo);
      const Mat pencil = symmetrize(root * spd_inverse(unit_level_form(*ei)) * root);
      Eigen::SelfAdjointEigenSolver<Mat> es(pencil);
      const auto top = pencil.rows() - 1;
      out.ratio = std::sqrt(std::max(0.0, es.eigenvalues()(top)));
      out.witness = (root * es.eigenvectors().col(top)).normalized();
    } else {
      // Gauge of the inner vertices with respect to the outer ellipsoid.
      const auto& poly = std::get<PolytopeBody>(inner);
      for (const Vec& v : poly.vertices()) {
        const double gauge = std::sqrt(v.dot(qo * v));
        if (gauge > out.ratio || out.witness.size() == 0) {
          out.ratio = gauge;
          out.witness = (qo * v).normalized();
        }
      }
    }
  } else {
    const auto& po = std::get<PolytopeBody>(outer);
    bool first = true;
    for (const Vec& a : po.normals()) {
      const double r = support_function(inner, a) / max_dot(po.vertices(), a);
      if (first || r > out.ratio) {
        out.ratio = r;
        out.witness = a.normalized();
        first = false;
      }
    }
  }
  out.holds = out.ratio <= 1.0 + tol;
  return out;
}

namespace {

// Membership form of inclusion, used as the bisection predicate: vertices
// against constraints for polytopes, the unwhitened Löwner gap for ellipsoids.
bool contains_by_membership(const ConvexBody& outer, const ConvexBody& inner) {
  if (const auto* pi = std::get_if<PolytopeBody>(&inner)) {
    for (const Vec& v : pi->vertices()) {
      if (const auto* eo = std::get_if<EllipsoidBody>(&outer)) {
        if (v.dot(eo->q * v) > eo->hbar) return false;
      } else {
        for (const Vec& a : std::get<PolytopeBody>(outer).normals())
          if (a.dot(v) > 1.0) return false;
      }
    }
    return true;
  }
  const auto& ei = std::get<EllipsoidBody>(inner);
  if (const auto* eo = std::get_if<EllipsoidBody>(&outer)) {
    return min_eigenvalue(unit_level_form(ei) - unit_level_form(*eo)) >= 0.0;
  }
  for (const Vec& a : std::get<PolytopeBody>(outer).normals()) {
    if (support_function(inner, a) > 1.0) return false;
  }
  return true;
}

void require_pair_inputs(const ConvexBody& x, const ConvexBody& p) {
  if (space_of(x) != Space::position || space_of(p) != Space::momentum) {
    throw Error(ErrorKind::contract,
                "quantum pair: X must be a position body and P a momentum body");
  }
  const double hx = hbar_of(x), hp = hbar_of(p);
  if (std::abs(hx - hp) > 1e-12 * std::max(hx, hp)) {
    throw Error(ErrorKind::contract, "quantum pair: bodies carry different hbar",
                {{"hbar_x", hx}, {"hbar_p", hp}});
  }
  require_same_dim(x, p, "quantum pair");
}

}  // namespace

double lambda_max_closed_form(const ConvexBody& x, const ConvexBody& p) {
  require_same_dim(x, p, "lambda_max");
  return 1.0 / contains(p, polar_dual(x), 0.0).ratio;
}

double lambda_max_bisection(const ConvexBody& x, const ConvexBody& p, double rel_tol) {
  require_same_dim(x, p, "lambda_max");
  const ConvexBody dual = polar_dual(x);
  Vec e1 = Vec::Zero(dim_of(x));
  e1(0) = 1.0;
  double hi = support_function(p, e1) / support_function(dual, e1);
  if (contains_by_membership(p, scaled(dual, hi))) return hi;
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > rel_tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (contains_by_membership(p, scaled(dual, mid))) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

QuantumPairReport quantum_pair_check(const ConvexBody& x, const ConvexBody& p, double tol) {
  require_pair_inputs(x, p);
  const ConvexBody dual = polar_dual(x);
  QuantumPairReport report;
  const bool ellipsoids = std::holds_alternative<EllipsoidBody>(x) &&
                          std::holds_alternative<EllipsoidBody>(p);
  report.lambda_max = ellipsoids ? lambda_max_closed_form(x, p) : lambda_max_bisection(x, p);
  report.holds = report.lambda_max >= 1.0 - tol;
  if (ellipsoids) {
    const auto& a = std::get<EllipsoidBody>(x).q;
    const auto& b = std::get<EllipsoidBody>(p).q;
    const Mat root = spd_sqrt(a);
    Eigen::SelfAdjointEigenSolver<Mat> es(symmetrize(root * b * root), Eigen::EigenvaluesOnly);
    report.saturated = (es.eigenvalues().array() - 1.0).abs().maxCoeff() <= tol;
  } else {
    report.saturated = report.holds && contains(p, dual, tol).holds && contains(dual, p, tol).holds;
  }
  if (!report.holds) report.witness = contains(p, dual, tol).witness;
  return report;
}

double ball_volume(int n, double r) {
  return std::pow(std::numbers::pi, 0.5 * n) * std::pow(r, n) / std::tgamma(0.5 * n + 1.0);
}

double volume(const ConvexBody& body) {
  return std::visit(
      Overloaded{[](const EllipsoidBody& e) {
                   const int n = e.dim();
                   return ball_volume(n, 1.0) * std::sqrt(std::pow(e.hbar, n) / e.q.determinant());
                 },
                 [](const PolytopeBody& p) {
                   if (p.dim() > 4) {
                     throw Error(ErrorKind::dimension,
                                 "volume: exact polytope volume limited to n <= 4");
                   }
                   return detail::hull_volume(p.vertices());
                 }},
      body);
}

MahlerReport mahler_volume(const ConvexBody& body, double rel_tol) {
  const int n = dim_of(body);
  const double hbar = hbar_of(body);
  MahlerReport r;
  r.vol_body = volume(body);
  r.vol_dual = volume(polar_dual(body));
  if (!(r.vol_body > 0.0) || !std::isfinite(r.vol_body) || !(r.vol_dual > 0.0)) {
    throw Error(ErrorKind::degeneracy, "mahler_volume: degenerate body");
  }
  r.mahler = r.vol_body * r.vol_dual;
  const double ball = ball_volume(n, std::sqrt(hbar));
  r.santalo_bound = ball * ball;
  r.mahler_bound = std::pow(4.0 * hbar, n) / std::tgamma(n + 1.0);
  r.santalo_holds = r.mahler <= r.santalo_bound * (1.0 + rel_tol);
  r.mahler_holds = r.mahler >= r.mahler_bound * (1.0 - rel_tol);
  r.mahler_asserted = n <= 2;
  if (!r.santalo_holds) {
    throw Error(ErrorKind::internal, "mahler_volume: Blaschke-Santalo bound violated",
                {{"mahler", r.mahler}, {"bound", r.santalo_bound}});
  }
  if (r.mahler_asserted && !r.mahler_holds) {
    throw Error(ErrorKind::internal, "mahler_volume: Mahler lower bound violated for n <= 2",
                {{"mahler", r.mahler}, {"bound", r.mahler_bound}});
  }
  return r;
}

}  // namespace symplecta
