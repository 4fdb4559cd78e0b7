#include "hull.hpp"

#include <algorithm>
#include <cmath>

#include "symplecta/error.hpp"

namespace symplecta::detail {

namespace {

// Calls f(indices) for every k-subset of {0..m-1} in lexicographic order.
template <typename F>
void for_each_subset(int m, int k, F&& f) {
  if (k > m || k <= 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Facet> enumerate_facets(const std::vector<Vec>& points, const Vec& center,
                                    double tol) {
  std::vector<Facet> facets;
  if (points.empty()) return facets;
  const int d = static_cast<int>(center.size());
  const int m = static_cast<int>(points.size());

  for_each_subset(m, d, [&](const std::vector<int>& idx) {
    Mat y(d, d);
    for (int r = 0; r < d; ++r) y.row(r) = (points[idx[r]] - center).transpose();
    Eigen::FullPivLU<Mat> lu(y);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) return;
    const Vec a = lu.solve(Vec::Ones(d));
    if (!a.allFinite()) return;

    std::vector<int> incident;
    for (int i = 0; i < m; ++i) {
      const double v = a.dot(points[i] - center);
      if (v > 1.0 + tol) return;
      if (std::abs(v - 1.0) <= tol) incident.push_back(i);
    }
    for (const Facet& f : facets) {
      if ((f.normal - a).norm() <= tol * std::max(1.0, a.norm())) return;
    }
    facets.push_back({a, std::move(incident)});
  });
  return facets;
}

int affine_rank(const std::vector<Vec>& points, double tol) {
  if (points.size() < 2) return 0;
  const auto d = points.front().size();
  Mat diffs(d, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) diffs.col(i - 1) = points[i] - points[0];
  Eigen::FullPivLU<Mat> lu(diffs);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

double hull_volume(const std::vector<Vec>& points) {
  if (points.empty()) return 0.0;
  const int d = static_cast<int>(points.front().size());
  if (d == 1) {
    double lo = points.front()(0), hi = lo;
    for (const Vec& p : points) {
      lo = std::min(lo, p(0));
      hi = std::max(hi, p(0));
    }
    return hi - lo;
  }
  if (affine_rank(points) < d) return 0.0;

  Vec center = Vec::Zero(d);
  for (const Vec& p : points) center += p;
  center /= static_cast<double>(points.size());

  const auto facets = enumerate_facets(points, center);
  if (facets.empty()) {
    throw Error(ErrorKind::internal, "hull_volume: no facets found for a full-dimensional set");
  }
  double volume = 0.0;
  for (const Facet& f : facets) {
    const double height = 1.0 / f.normal.norm();
    Eigen::HouseholderQR<Mat> qr(Mat(f.normal));
    const Mat q = qr.householderQ() * Mat::Identity(d, d);
    const Mat basis = q.rightCols(d - 1);
    std::vector<Vec> projected;
    projected.reserve(f.incident.size());
    for (int i : f.incident) projected.push_back(basis.transpose() * (points[i] - center));
    volume += height * hull_volume(projected) / d;
  }
  return volume;
}

}  // namespace symplecta::detail
