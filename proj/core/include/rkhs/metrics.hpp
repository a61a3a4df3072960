#pragma once

#include <functional>
#include <optional>
#include <string>

#include "rkhs/kernel.hpp"

namespace rkhs {

/// delta(x, y) = sqrt(1 - |<k^_x, k^_y>|^2), the sine of the angle between
/// the normalized kernel functions. Symmetric, in [0, 1], 0 on the diagonal.
double delta(const Kernel& k, const Point& x, const Point& y);

/// Skwarcynski/Cayley quotient metric sqrt(2) sqrt(1 - |<k^_x, k^_y>|).
double delta_hat(const Kernel& k, const Point& x, const Point& y);

/// Geodesic distance between the lines [k_x], [k_y] in projective Hilbert
/// space: arccos |<k^_x, k^_y>|.
double delta_check(const Kernel& k, const Point& x, const Point& y);

/// Pseudohyperbolic metric |z-w| / |1 - conj(z) w| on the unit disk.
double rho_disk(Complex z, Complex w);

/// Hyperbolic metric log((1+rho)/(1-rho)).
double beta_disk(Complex z, Complex w);

/// Ball pseudohyperbolic metric: rho_n^2 = 1 - (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2.
double rho_ball(const Point& z, const Point& w);

/// The three pairing-based distances from a single stable pairing evaluation.
struct DeltaTriple {
  double delta, delta_hat, delta_check;
};
DeltaTriple delta_triple(const Kernel& k, const Point& x, const Point& y);

using DistanceFn = std::function<double(const Point&, const Point&)>;

struct MetricKind {
  enum class Tag {
    delta,
    delta_hat,
    delta_check,
    rho_disk,
    beta_disk,
    rho_ball,
    bs_geodesic
  };
  Tag tag = Tag::delta;

  static std::optional<MetricKind> from_string(const std::string& name);
  std::string to_string() const;
  /// True when the metric needs a kernel (pairing-based or bs_geodesic).
  bool needs_kernel() const;
};

/// Distance callable for a metric tag; kernel may be null for the disk/ball
/// metrics. bs_geodesic is *not* resolvable to a pointwise callable here (it
/// is an inner distance); request it through inner_distance instead.
DistanceFn resolve_metric(MetricKind kind, const Kernel* kernel);

}  // namespace rkhs
