#pragma once

#include <memory>

#include "rkhs/curve.hpp"
#include "rkhs/kernel.hpp"

namespace rkhs {

/// Kernel-span basis {k_{x_1}, ..., k_{x_m}} with its Gram matrix and a
/// Cholesky factor. If the Gram is numerically singular a diagonal jitter of
/// 1e-12 * trace is added once and reported; spans at close points are
/// near-singular by nature.
struct SpanBasis {
  Kernel kernel;
  std::vector<Point> points;
  Eigen::MatrixXcd gram;  // after jitter, exact Hermitian storage
  Eigen::MatrixXcd chol;  // lower triangular, gram = chol chol^H
  bool jittered = false;
  double jitter = 0.0;
  double condition = 0.0;  // max/min eigenvalue after jitter

  static std::shared_ptr<const SpanBasis> build(const Kernel& k,
                                                std::vector<Point> points);
  int size() const { return static_cast<int>(points.size()); }

  /// Solves gram * out = rhs through the Cholesky factor.
  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;
};

/// Finite-rank operator A = sum_ij C[i][j] |k_{x_i}><k_{x_j}| over a span
/// basis. Composition, adjoints and norms all reduce to small dense algebra
/// in the orthonormalized frame M = chol^H C chol.
struct SpanOperator {
  std::shared_ptr<const SpanBasis> basis;
  Eigen::MatrixXcd coeffs;

  SpanOperator add(const SpanOperator& o) const;
  SpanOperator sub(const SpanOperator& o) const;
  SpanOperator scale(Complex c) const;
  SpanOperator compose(const SpanOperator& o) const;  // A then B: A.compose(B) = A B
  SpanOperator adjoint() const;
  bool self_adjoint(double tol = 1e-12) const;

  Eigen::MatrixXcd orthonormal_matrix() const;

  /// Coefficients of A k_y expanded in the basis (k_y need not be a basis
  /// element; its pairings against the basis are used).
  Eigen::VectorXcd apply_to_kernel(const Point& y) const;
};

/// Rank-one projection P = |k^_x><k^_x| onto the span of the index-th basis
/// kernel.
SpanOperator projection(std::shared_ptr<const SpanBasis> basis, int index);

/// Schatten p-norm of the span operator (p >= 1; infinity gives the operator
/// norm): the p-norm of the singular values in the orthonormalized frame.
double schatten_norm(const SpanOperator& op, double p);
Complex operator_trace(const SpanOperator& op);

/// ||[P_i, P_j]|| for the projections onto basis kernels i and j; equals
/// sqrt(delta^2 (1 - delta^2)).
double commutator_norm(std::shared_ptr<const SpanBasis> basis, int i, int j);

/// Berezin transform A^(x) = <A k^_x, k^_x>. For self-adjoint operators the
/// imaginary part is asserted below 1e-12.
Complex berezin(const SpanOperator& op, const Point& x);

/// The diagonal action of a multiplier adjoint on the span:
/// k_{x_i} -> conj(m(x_i)) k_{x_i}.
SpanOperator multiplier_adjoint_action(std::shared_ptr<const SpanBasis> basis,
                                       std::span<const Complex> symbol_values);

/// The unit-norm function vanishing at z that maximizes Re F(w):
/// F = (k_w - ||k_z||^-2 k_w(z) k_z) / (||k_w|| delta(z, w)).
struct ExtremalFunction {
  std::function<Complex(const Point&)> fn;
  double value_at_w = 0.0;  // = ||k_w|| delta(z, w)
};
ExtremalFunction extremal_function(const Kernel& k, const Point& z,
                                   const Point& w);

/// Norms of the gap L_x - L_y between rank-one Hankel forms
/// L_a = k^_a (x) k^_a, through the conjugate-linear representer reduction
/// beta*beta = (P_x - P_y)^2. The form norm equals delta(x, y) and the trace
/// norm equals 2 delta(x, y).
struct HankelGap {
  double norm = 0.0;
  double trace_norm = 0.0;
};
HankelGap hankel_gap_norm(std::shared_ptr<const SpanBasis> basis, int i,
                          int j);

/// Total variation of the Berezin transform along a curve by dyadic
/// refinement, with the Lipschitz bound Var <= 2 ||A|| l_delta(gamma).
struct VariationResult {
  double value = 0.0;
  bool converged = false;
  double lipschitz_bound = 0.0;
  bool within_bound = false;
};
VariationResult variation_along_curve(const SpanOperator& op,
                                      const Curve& curve, double tol = 1e-8);

/// JSON round-trip {kernel, points[], coeffs[][] (re/im pairs)}.
std::string span_operator_to_json(const SpanOperator& op);
SpanOperator span_operator_from_json(const std::string& text);

}  // namespace rkhs
