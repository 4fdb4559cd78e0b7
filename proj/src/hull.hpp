#pragma once

#include <vector>

#include "symplecta/linalg.hpp"

namespace symplecta::detail {

struct Facet {
  Vec normal;                 // facet is {y : normal·(y − center) = 1}
  std::vector<int> incident;  // indices of the points lying on it
};

// Facets of conv(points) relative to a strictly interior center, found by
// brute force over d-subsets (d = ambient dimension). Intended for the small
// point sets used here (d ≤ 4, a few dozen points).
std::vector<Facet> enumerate_facets(const std::vector<Vec>& points, const Vec& center,
                                    double tol = 1e-9);

// Affine rank of a point set.
int affine_rank(const std::vector<Vec>& points, double tol = 1e-10);

// d-dimensional volume of conv(points), points spanning R^d. Exact up to
// rounding: cones from the centroid over facets, recursing into each facet.
double hull_volume(const std::vector<Vec>& points);

}  // namespace symplecta::detail
