#include "rkhs/curve.hpp"

#include <cmath>

namespace rkhs {

Curve Curve::segment(Point a, Point b) {
  if (a.dim() != b.dim() || a.side != b.side)
    throw ValidationError("segment curve endpoints live in different domains");
  Curve c;
  c.at = [a, b](double t) {
    Point p = a;
    for (int i = 0; i < a.dim(); ++i)
      p.coords[i] = (1.0 - t) * a.coords[i] + t * b.coords[i];
    return p;
  };
  return c;
}

Curve Curve::radial(Complex from, Complex to) {
  return segment(Point(from), Point(to));
}

Curve Curve::polyline(std::vector<Point> vertices) {
  if (vertices.size() < 2)
    throw ValidationError("polyline needs at least two vertices");
  // constant-speed parameterization: refinement samples then space uniformly
  // in euclidean arclength even when the vertices bunch up
  std::vector<double> cum(vertices.size(), 0.0);
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    double d2 = 0;
    for (int d = 0; d < vertices[i].dim(); ++d)
      d2 += std::norm(vertices[i].coords[d] - vertices[i - 1].coords[d]);
    cum[i] = cum[i - 1] + std::sqrt(d2);
  }
  const double total = cum.back();
  if (!(total > 0.0))
    throw ValidationError("polyline vertices all coincide");
  Curve c;
  const auto n = vertices.size();
  c.at = [v = std::move(vertices), cum = std::move(cum), total, n](double t) {
    const double s = std::clamp(t, 0.0, 1.0) * total;
    std::size_t i =
        std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
    i = std::min(std::max<std::size_t>(i, 1), n - 1) - 1;
    while (i + 2 < n && cum[i + 1] <= cum[i]) ++i;  // skip zero-length legs
    const double seg = cum[i + 1] - cum[i];
    const double f = seg > 0 ? std::clamp((s - cum[i]) / seg, 0.0, 1.0) : 0.0;
    Point p = v[i];
    for (int d = 0; d < p.dim(); ++d)
      p.coords[d] = (1.0 - f) * v[i].coords[d] + f * v[i + 1].coords[d];
    return p;
  };
  c.initial_samples = std::max<int>(8, static_cast<int>(2 * (n - 1)));
  return c;
}

LengthResult refine_dyadic(
    const std::function<double(const Point&, const Point&)>& term,
    const Curve& curve, double tol) {
  if (curve.initial_samples < 2)
    throw ValidationError("curve needs at least two initial samples");
  LengthResult out;
  long n = curve.initial_samples;
  double prev = -1.0;
  for (int level = 0; level <= curve.refinement_limit; ++level, n *= 2) {
    double sum = 0.0;
    Point a = curve.at(0.0);
    for (long i = 1; i <= n; ++i) {
      Point b = curve.at(double(i) / double(n));
      sum += term(a, b);
      a = std::move(b);
    }
    if (prev >= 0.0) {
      // slack covers accumulated rounding: each term of size ~L/n carries an
      // absolute error ~eps/term, so the sum noise grows like n^1.5
      const double slack =
          std::max(1e-12, 4e-16 * std::pow(double(n), 1.5)) *
          std::max(1.0, prev);
      if (sum < prev - slack)
        throw InconsistencyError(
            "partition refinement decreased the length sum");
      out.last_delta = std::abs(sum - prev);
      out.previous = prev;
      if (out.last_delta < tol) {
        out.value = sum;
        out.converged = true;
        out.levels = level;
        return out;
      }
    }
    prev = sum;
    out.levels = level;
  }
  out.value = prev;
  out.converged = false;
  return out;
}

LengthResult curve_length(const DistanceFn& sigma, const Curve& curve,
                          double tol) {
  return refine_dyadic(sigma, curve, tol);
}

}  // namespace rkhs
