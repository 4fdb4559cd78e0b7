#pragma once

#include <variant>
#include <vector>

#include "symplecta/linalg.hpp"

namespace symplecta {

enum class Space { position, momentum };

Space flipped(Space s);
const char* to_string(Space s);

// {u : Qu·u ≤ hbar} with Q symmetric positive definite.
struct EllipsoidBody {
  Space space = Space::position;
  Mat q;
  double hbar = 1.0;

  // Validates Q and hbar.
  static EllipsoidBody make(Space space, Mat q, double hbar);
  // Euclidean ball of the given radius.
  static EllipsoidBody ball(Space space, int dim, double radius, double hbar);

  int dim() const { return static_cast<int>(q.rows()); }
};

// Centrally symmetric polytope holding both its vertex list and its facet
// normals a_i (facets a_i·u ≤ 1).
class PolytopeBody {
 public:
  // Vertex set must be closed under v ↦ −v and span the space. Points that are
  // not on the hull boundary are dropped.
  static PolytopeBody from_vertices(Space space, std::vector<Vec> vertices, double hbar);
  // Adds the negatives of the generators, then behaves like from_vertices.
  static PolytopeBody symmetric_hull(Space space, const std::vector<Vec>& generators, double hbar);
  // Axis-aligned box with the given half widths.
  static PolytopeBody box(Space space, const Vec& half_widths, double hbar);
  // Both representations given; checked to describe the same set within 1e-9.
  static PolytopeBody from_representations(Space space, std::vector<Vec> vertices,
                                           std::vector<Vec> normals, double hbar);

  Space space() const { return space_; }
  double hbar() const { return hbar_; }
  int dim() const { return static_cast<int>(vertices_.front().size()); }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Vec>& normals() const { return normals_; }

 private:
  PolytopeBody(Space space, std::vector<Vec> vertices, std::vector<Vec> normals, double hbar)
      : space_(space), vertices_(std::move(vertices)), normals_(std::move(normals)), hbar_(hbar) {}

  Space space_;
  std::vector<Vec> vertices_;
  std::vector<Vec> normals_;
  double hbar_;
};

using ConvexBody = std::variant<EllipsoidBody, PolytopeBody>;

Space space_of(const ConvexBody& body);
double hbar_of(const ConvexBody& body);
int dim_of(const ConvexBody& body);

// λ·body.
ConvexBody scaled(const ConvexBody& body, double lambda);
// L·body for invertible L.
ConvexBody transformed(const ConvexBody& body, const Mat& l);

// ħ-polar dual {p : p·x ≤ ħ for all x ∈ X}, space tag flipped.
ConvexBody polar_dual(const ConvexBody& body);

// h_X(d) = sup_{x∈X} d·x. Domain error on a zero direction.
double support_function(const ConvexBody& body, const Vec& direction);

struct Containment {
  bool holds = false;
  double ratio = 0.0;  // max over tested directions of h_inner / h_outer
  Vec witness;         // unit direction where inner sticks out most
};

// inner ⊆ outer. Ellipsoid pairs use the Löwner order; any polytope is handled
// by support functions over the outer facet normals or inner vertices. The
// tolerance is relative to the outer body's support values.
Containment contains(const ConvexBody& outer, const ConvexBody& inner, double tol = 1e-9);

struct QuantumPairReport {
  bool holds = false;
  double lambda_max = 0.0;
  bool saturated = false;
  Vec witness;  // set when holds is false
};

// Decides X^ħ ⊆ P and reports λ_max = sup{λ : λX^ħ ⊆ P}; holds ⟺ λ_max ≥ 1 − tol.
QuantumPairReport quantum_pair_check(const ConvexBody& x, const ConvexBody& p, double tol = 1e-9);

// λ_max by closed form: 1/√(max eig A^{1/2}BA^{1/2}) for ellipsoid pairs, minimum
// support ratio over the critical directions otherwise.
double lambda_max_closed_form(const ConvexBody& x, const ConvexBody& p);
// λ_max by bisection on the containment predicate, relative width rel_tol.
double lambda_max_bisection(const ConvexBody& x, const ConvexBody& p, double rel_tol = 1e-13);

double volume(const ConvexBody& body);

// Volume of the Euclidean n-ball of radius r.
double ball_volume(int n, double r);

struct MahlerReport {
  double vol_body = 0.0;
  double vol_dual = 0.0;
  double mahler = 0.0;
  double santalo_bound = 0.0;  // (Vol Bⁿ(√ħ))²
  double mahler_bound = 0.0;   // (4ħ)ⁿ/n!
  bool santalo_holds = false;
  bool mahler_holds = false;
  bool mahler_asserted = false;  // lower bound only proven for n ≤ 2
};

// Throws internal error when a proven bound fails (Santaló always, the lower
// bound for n ≤ 2). Polytopes limited to n ≤ 4.
MahlerReport mahler_volume(const ConvexBody& body, double rel_tol = 1e-8);

}  // namespace symplecta
