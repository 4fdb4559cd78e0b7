#pragma once

#include <vector>

#include "symplecta/blobs.hpp"
#include "symplecta/polar.hpp"
#include "symplecta/symplectic.hpp"

namespace symplecta {

enum class CapacityMethod { ellipsoid_formula, planar_area, product_formula };

const char* to_string(CapacityMethod m);

struct CapacityValue {
  double value = 0.0;
  CapacityMethod method = CapacityMethod::ellipsoid_formula;
  double hbar = 1.0;
};

// πħ/λ_max^σ(M) for {Mz·z ≤ ħ}.
CapacityValue ellipsoid_capacity(const PhaseEllipsoid& e);

// All capacities agree on ellipsoids.
inline CapacityValue c_min(const PhaseEllipsoid& e) { return ellipsoid_capacity(e); }
inline CapacityValue c_max(const PhaseEllipsoid& e) { return ellipsoid_capacity(e); }

// Convex polygon in the (x, p) plane, vertices in any order.
struct Polygon {
  std::vector<Vec> vertices;
};

// Hofer-Zehnder capacity of a planar convex body, i.e. its area.
CapacityValue hz_planar(const PhaseEllipsoid& e);
CapacityValue hz_planar(const Polygon& k, double hbar);

struct ProductCapacity {
  CapacityValue capacity;
  double lambda_max = 0.0;
  bool saturated = false;
  double planar_area = 0.0;  // area of X × P for n = 1, NaN otherwise
};

// c_HZ(X × P) = 4λ_max ħ for a quantum polar pair; domain error otherwise.
ProductCapacity hz_product_pair(const ConvexBody& x, const ConvexBody& p, double tol = 1e-9);

struct ProjectionArea {
  double area = 0.0;
  double bound = 0.0;  // πR²
  bool passes = false;
  bool equality = false;
};

// Area of the projection of S(B²ⁿ(R)) on the (x_j, p_j) plane, j 1-based.
ProjectionArea projection_area_check(const SymplecticMatrix& s, double radius, int j,
                                     double tol = 1e-9);

}  // namespace symplecta
