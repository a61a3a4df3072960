#include "rkhs/metrics.hpp"

#include <cmath>

namespace rkhs {

namespace {
// all three distances are functions of w = 1 - |<k^_x,k^_y>|, computed once
// without cancellation
double delta_of_w(double w) { return std::sqrt(w * (2.0 - w)); }
double delta_hat_of_w(double w) { return std::sqrt(2.0 * w); }
double delta_check_of_w(double w) { return 2.0 * std::asin(std::sqrt(0.5 * w)); }
}  // namespace

double delta(const Kernel& k, const Point& x, const Point& y) {
  return delta_of_w(k.normalized_pairing(x, y).one_minus_magnitude);
}

double delta_hat(const Kernel& k, const Point& x, const Point& y) {
  return delta_hat_of_w(k.normalized_pairing(x, y).one_minus_magnitude);
}

double delta_check(const Kernel& k, const Point& x, const Point& y) {
  return delta_check_of_w(k.normalized_pairing(x, y).one_minus_magnitude);
}

DeltaTriple delta_triple(const Kernel& k, const Point& x, const Point& y) {
  const double w = k.normalized_pairing(x, y).one_minus_magnitude;
  return {delta_of_w(w), delta_hat_of_w(w), delta_check_of_w(w)};
}

double rho_disk(Complex z, Complex w) {
  if (!(std::abs(z) < 1.0))
    throw DomainError("rho: coords[0] = " + Point(z).to_string() +
                      " is not in the open unit disk");
  if (!(std::abs(w) < 1.0))
    throw DomainError("rho: coords[0] = " + Point(w).to_string() +
                      " is not in the open unit disk");
  return std::abs((z - w) / (1.0 - std::conj(z) * w));
}

double beta_disk(Complex z, Complex w) {
  const double r = rho_disk(z, w);
  return std::log((1.0 + r) / (1.0 - r));
}

double rho_ball(const Point& z, const Point& w) {
  if (z.dim() != w.dim())
    throw DomainError("rho_ball: points of different dimension");
  if (!(z.norm() < 1.0) || !(w.norm() < 1.0))
    throw DomainError("rho_ball: point outside the open unit ball");
  // 1 - (1-|z|^2)(1-|w|^2)/|1-<z,w>|^2 through logs; the pairing magnitude
  // has log m = -Re log(1-<z,w>) + (1/2) log(1-|z|^2) + (1/2) log(1-|w|^2)
  const Complex d = detail::clog1p(-hermitian_dot(z, w));  // log(1-<z,w>)
  const double lzz = std::log1p(-z.norm() * z.norm());
  const double lww = std::log1p(-w.norm() * w.norm());
  const double logm = -d.real() + 0.5 * lzz + 0.5 * lww;
  const double wv = -std::expm1(std::min(logm, 0.0));
  return std::sqrt(wv * (2.0 - wv));
}

std::optional<MetricKind> MetricKind::from_string(const std::string& name) {
  using Tag = MetricKind::Tag;
  if (name == "delta") return MetricKind{Tag::delta};
  if (name == "delta-hat") return MetricKind{Tag::delta_hat};
  if (name == "delta-check") return MetricKind{Tag::delta_check};
  if (name == "rho") return MetricKind{Tag::rho_disk};
  if (name == "beta") return MetricKind{Tag::beta_disk};
  if (name == "rho-ball") return MetricKind{Tag::rho_ball};
  if (name == "bs-geodesic") return MetricKind{Tag::bs_geodesic};
  return std::nullopt;
}

std::string MetricKind::to_string() const {
  switch (tag) {
    case Tag::delta: return "delta";
    case Tag::delta_hat: return "delta-hat";
    case Tag::delta_check: return "delta-check";
    case Tag::rho_disk: return "rho";
    case Tag::beta_disk: return "beta";
    case Tag::rho_ball: return "rho-ball";
    case Tag::bs_geodesic: return "bs-geodesic";
  }
  return "?";
}

bool MetricKind::needs_kernel() const {
  return tag == Tag::delta || tag == Tag::delta_hat ||
         tag == Tag::delta_check || tag == Tag::bs_geodesic;
}

DistanceFn resolve_metric(MetricKind kind, const Kernel* kernel) {
  using Tag = MetricKind::Tag;
  if (kind.needs_kernel() && kernel == nullptr)
    throw ValidationError("metric '" + kind.to_string() +
                          "' needs a kernel spec");
  switch (kind.tag) {
    case Tag::delta: {
      Kernel k = *kernel;
      return [k](const Point& a, const Point& b) { return delta(k, a, b); };
    }
    case Tag::delta_hat: {
      Kernel k = *kernel;
      return
          [k](const Point& a, const Point& b) { return delta_hat(k, a, b); };
    }
    case Tag::delta_check: {
      Kernel k = *kernel;
      return
          [k](const Point& a, const Point& b) { return delta_check(k, a, b); };
    }
    case Tag::rho_disk:
      return [](const Point& a, const Point& b) {
        return rho_disk(a.z(), b.z());
      };
    case Tag::beta_disk:
      return [](const Point& a, const Point& b) {
        return beta_disk(a.z(), b.z());
      };
    case Tag::rho_ball:
      return [](const Point& a, const Point& b) { return rho_ball(a, b); };
    case Tag::bs_geodesic:
      throw UnsupportedError(
          "bs-geodesic is an inner distance; use the geodesic machinery");
  }
  throw ValidationError("unknown metric kind");
}

}  // namespace rkhs
