#pragma once

#include <memory>
#include <optional>
#include <span>

#include "rkhs/kernel.hpp"

namespace rkhs {

/// Multiplier-invariant subspace given by vanishing conditions: order 1 means
/// f(s) = 0, order 2 means f(s) = f'(s) = 0 (scalar domains with analytic
/// kernel derivatives only).
struct VanishOnSpec {
  std::vector<Point> points;
  std::vector<int> orders;  // empty = all order 1
};

/// J = Theta H^2 for a finite Blaschke product Theta with the given zeros.
struct HardyInnerSpec {
  std::vector<Complex> zeros;
  Complex unimodular = 1.0;  // |c| = 1 front factor
};

/// A subspace J of an RKHS together with its orthogonal complement; exposes
/// the split K = K_J + K_Jperp. The complement Gram factorization is built
/// once and shared.
class Subspace {
 public:
  static Subspace vanish_on(const Kernel& parent, VanishOnSpec spec);
  static Subspace hardy_inner(HardyInnerSpec spec);

  const Kernel& parent() const;
  bool is_vanish_on() const;
  const VanishOnSpec* vanish_spec() const;    // null for hardy_inner
  const HardyInnerSpec* hardy_spec() const;   // null for vanish_on

  /// (K_J(x,y), K_Jperp(x,y)); the sum equals K(x,y) exactly by construction.
  std::pair<Complex, Complex> kernels(const Point& x, const Point& y) const;

  Complex theta(Complex z) const;  // hardy_inner only

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

enum class SubspacePart { j, jperp };

/// delta computed from the subspace kernel (j or jperp part). Undefined
/// (throws UndefinedValue) where the subspace kernel vanishes on the
/// diagonal, mirroring the convention for zero kernel functions.
double delta_sub(const Subspace& s, SubspacePart part, const Point& x,
                 const Point& y);

/// Closed forms for Hardy inner-function subspaces:
///   delta_J = rho(x, y) where Theta(x), Theta(y) != 0 (nullopt otherwise),
///   delta_Jperp = sqrt((rho^2 - rho_Theta^2) / (1 - rho_Theta^2)).
struct HardyInnerDeltas {
  std::optional<double> delta_j;
  double delta_jperp = 0.0;
};
HardyInnerDeltas hardy_inner_delta(std::span<const Complex> theta_zeros,
                                   Complex x, Complex y);

/// Congruence data of the projective triangle [k_x], [k_y], [k_z].
struct ShapeData {
  double upsilon = 0.0;            // Re of the cyclic triple product
  Complex triple_product;          // <k^x,k^y><k^y,k^z><k^z,k^x>
  double delta_xy_sq = 0.0;
  double delta_xz_sq = 0.0;
  double delta_zy_sq = 0.0;
  double delta_j_sq = 0.0;         // delta_J(y,z)^2, J = functions vanishing at x
  double delta_j_sq_gram = 0.0;    // the same through the Gram projection
};
ShapeData shape_invariant(const Kernel& k, const Point& x, const Point& y,
                          const Point& z);

/// Tabulates delta_J, delta_H, delta_Jperp per pair and checks the claim the
/// family supports: complete NP families get delta_J >= delta_H >=
/// delta_Jperp; the Bergman-type scale dhb alpha in [1,2] with vanish-on
/// subspaces gets delta_J <= delta_H. Anything else is refused.
struct MonotonicityReport {
  struct Row {
    Point x, y;
    double delta_j = 0.0, delta_h = 0.0;
    double delta_jperp = 0.0;
    bool jperp_defined = false;
    bool ok = false;
  };
  std::string claim;
  std::vector<Row> rows;
  bool all_ok = false;
};
MonotonicityReport monotonicity_report(
    const Kernel& k, const Subspace& s,
    std::span<const std::pair<Point, Point>> pairs);

/// The two sides of the small-t comparison for the order-2 vanishing
/// subspace of the Bergman space at the pair (t, -t):
///   lhs = 1 - delta_Jperp^2 = (1-2t^2)^2/(1+2t^2)^2
///   rhs = 1 - delta_H^2     = (1-t^2)^4/(1+t^2)^4.
struct TSeriesCheck {
  double lhs = 0.0, rhs = 0.0, difference = 0.0;
  double delta_jperp = 0.0, delta_h = 0.0;
};
TSeriesCheck t_series_check(double t);

/// Richardson-extrapolated t^6 coefficients of the two sides (about -96 and
/// -88), plus (side - 6th order series)/t^8 samples showing boundedness.
struct TSeriesCoefficients {
  double lhs_c6 = 0.0, rhs_c6 = 0.0;
  double lhs_c8_sample = 0.0, rhs_c8_sample = 0.0;
};
TSeriesCoefficients t_series_coefficients();

/// dhb family parameter when the kernel is a plain dhb node.
std::optional<double> dhb_alpha(const Kernel& k);

}  // namespace rkhs
