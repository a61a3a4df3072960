#include "rkhs/bs_metric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace rkhs {

namespace {

double log_diag(const Kernel& k, Complex z) {
  const LogEval l = k.log_eval(Point(z), Point(z));
  if (l.zero) throw UndefinedValue("log K(z,z) at a kernel zero");
  return l.log_abs;
}

// fourth-order 1-D second derivative, 5 samples
double second_derivative(const std::function<double(double)>& f, double h) {
  return (-f(2 * h) + 16 * f(h) - 30 * f(0) + 16 * f(-h) - f(-2 * h)) /
         (12 * h * h);
}

struct DensityRoutes {
  double fd = 0.0, analytic = 0.0;
  bool has_fd = false, has_analytic = false;
};

DensityRoutes density_routes(const Kernel& k, const Point& zp) {
  if (!k.domain().scalar())
    throw UnsupportedError("bs density needs a scalar-domain kernel");
  k.validate_point(zp);
  const Complex z = zp.z();

  DensityRoutes r;

  if (k.has_jet()) {
    const KernelJet j = k.jet(zp, zp);
    // T = (d11 a - d10 d01) / a^2 with everything on the diagonal
    const Complex t = (j.d11 * j.a - j.d10 * j.d01) / (j.a * j.a);
    r.analytic = t.real();
    r.has_analytic = true;
  }

  const bool disk = k.domain().kind == Domain::Kind::disk;
  double h = disk ? std::max(1e-5, 1e-3 * (1.0 - std::abs(z)))
                  : 1e-3 * (1.0 + std::abs(z));
  // the stencil reaches 2h from z and its truncation/roundoff balance decays
  // like a power of 1/(1-|z|); past 1-|z| = 0.05 the finite-difference route
  // can no longer support the 1e-6 cross-check and the analytic route stands
  // alone
  const bool stencil_fits =
      !disk || (1.0 - std::abs(z) >= 0.05 && std::abs(z) + 2.0 * h < 1.0);
  if (stencil_fits) {
    const auto ux = [&](double t) { return log_diag(k, z + t); };
    const auto uy = [&](double t) { return log_diag(k, z + Complex(0, t)); };
    r.fd = 0.25 * (second_derivative(ux, h) + second_derivative(uy, h));
    r.has_fd = true;
  } else if (!r.has_analytic) {
    throw UnsupportedError(
        "bs density: no analytic derivatives and the finite-difference "
        "stencil does not fit inside the domain at " +
        zp.to_string());
  }

  return r;
}

}  // namespace

double bs_density(const Kernel& k, const Point& zp) {
  const DensityRoutes r = density_routes(k, zp);
  if (r.has_fd && r.has_analytic) {
    const double scale = std::max({std::abs(r.analytic), std::abs(r.fd), 1e-12});
    if (std::abs(r.fd - r.analytic) > 1e-6 * scale)
      throw InconsistencyError(
          "bs density: finite-difference and analytic routes disagree at " +
          zp.to_string() + " (" + std::to_string(r.fd) + " vs " +
          std::to_string(r.analytic) + ")");
  }
  const double t = r.has_analytic ? r.analytic : r.fd;
  if (!(t >= 0.0) && t < -1e-10)
    throw InconsistencyError("bs density negative at " + zp.to_string());
  return std::max(t, 0.0);
}

LengthResult bs_length(const Kernel& k, const Curve& curve, double tol) {
  const long finest =
      static_cast<long>(curve.initial_samples) << curve.refinement_limit;
  const double ht = 1.0 / (8.0 * double(std::max<long>(finest, 16)));

  const auto tangent_norm = [&](double t) {
    const double lo = std::max(0.0, t - ht), hi = std::min(1.0, t + ht);
    const Point a = curve.at(lo), b = curve.at(hi);
    double s = 0;
    for (int i = 0; i < a.dim(); ++i) s += std::norm(b.coords[i] - a.coords[i]);
    return std::sqrt(s) / (hi - lo);
  };
  const auto integrand = [&](double t) {
    return std::sqrt(bs_density(k, curve.at(t))) * tangent_norm(t);
  };

  double err = 0.0;
  LengthResult out;
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      integrand, 0.0, 1.0, 18, tol, &err);
  out.last_delta = err;
  out.converged = std::isfinite(out.value) &&
                  err <= std::max(tol, 1e-7) * std::max(1.0, out.value);
  return out;
}

}  // namespace rkhs
