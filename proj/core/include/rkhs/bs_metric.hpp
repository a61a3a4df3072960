#pragma once

#include "rkhs/curve.hpp"
#include "rkhs/kernel.hpp"

namespace rkhs {

/// Riemannian density T(z) of the metric ds^2 = T |dz|^2 induced by the
/// kernel: T = d^2/(dz dzbar) log K(z, z). Computed by fourth-order central
/// finite differences of log K(z, z) and, where the family carries analytic
/// derivatives, by the first-order kernel data; the two routes are
/// cross-checked to 1e-6 relative when both are available. Near the domain
/// boundary the finite-difference stencil no longer fits and the analytic
/// route alone is used.
double bs_density(const Kernel& k, const Point& z);

/// Length of a curve in the induced Riemannian metric:
/// integral of sqrt(T(gamma(t))) |gamma'(t)| dt by adaptive Gauss-Kronrod,
/// tangents by central differences with step 1/(8 * finest sample count).
LengthResult bs_length(const Kernel& k, const Curve& curve, double tol = 1e-9);

}  // namespace rkhs
