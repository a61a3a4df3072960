#pragma once

#include <vector>

#include "rkhs/bs_metric.hpp"
#include "rkhs/curve.hpp"
#include "rkhs/metrics.hpp"

namespace rkhs {

struct GeodesicResult {
  double distance = 0.0;  // inner distance estimate (length of best curve)
  double direct = 0.0;    // sigma(x, y); distance >= direct - 1e-9 holds
  bool converged = false;
  std::vector<Point> path;  // smoothed polyline from x to y
};

/// Infimum of sigma-lengths over curves joining x and y, approximated by a
/// shortest path on a grid graph (edges between cells within radius 2),
/// elastic smoothing, and a final refined length evaluation. Scalar domains
/// only; grids are capped at 400x400. The domain kernel bounds the search
/// region (unit disk, or a box around the endpoints on the plane); pass
/// nullptr for a Euclidean box domain.
GeodesicResult inner_distance(const DistanceFn& sigma, const Kernel* domain,
                              const Point& x, const Point& y, int grid = 241);

/// Same machinery with the Bergman-style length element as the edge weight:
/// approximates the geodesic distance of ds^2 = T |dz|^2.
GeodesicResult bs_geodesic_distance(const Kernel& k, const Point& x,
                                    const Point& y, int grid = 241);

}  // namespace rkhs
