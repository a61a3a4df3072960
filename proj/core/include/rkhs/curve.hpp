#pragma once

#include <functional>
#include <vector>

#include "rkhs/metrics.hpp"

namespace rkhs {

/// A parametric path t in [0,1] -> Point with dyadic refinement bounds.
/// Parameterizations are assumed Lipschitz.
struct Curve {
  std::function<Point(double)> at;
  int initial_samples = 8;    // >= 2
  int refinement_limit = 14;  // doublings allowed past the initial count

  static Curve segment(Point a, Point b);
  static Curve radial(Complex from, Complex to);  // straight scalar segment
  static Curve polyline(std::vector<Point> vertices);
};

struct LengthResult {
  double value = 0.0;
  bool converged = false;
  double last_delta = 0.0;  // |last - previous| refinement gap
  double previous = 0.0;
  int levels = 0;
};

/// sup over partitions of sum sigma(gamma(t_i), gamma(t_i+1)), approximated
/// by dyadic refinement; stops when successive refinements differ by less
/// than tol. Refinement sums never decrease (triangle inequality); that
/// monotonicity is asserted up to rounding slack.
LengthResult curve_length(const DistanceFn& sigma, const Curve& curve,
                          double tol = 1e-8);

/// Shared dyadic refinement: term(a, b) summed over consecutive samples.
LengthResult refine_dyadic(
    const std::function<double(const Point&, const Point&)>& term,
    const Curve& curve, double tol);

}  // namespace rkhs
