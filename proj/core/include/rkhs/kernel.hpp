#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rkhs/errors.hpp"
#include "rkhs/point.hpp"

namespace rkhs {

/// Domain of a kernel's underlying set.
struct Domain {
  enum class Kind { disk, plane, ball, disjoint_union, finite_set };
  Kind kind = Kind::disk;
  int dim = 1;  // ball dimension
  std::shared_ptr<const Domain> left, right;

  static Domain disk() { return {Kind::disk, 1, nullptr, nullptr}; }
  static Domain plane() { return {Kind::plane, 1, nullptr, nullptr}; }
  static Domain ball(int n) { return {Kind::ball, n, nullptr, nullptr}; }
  static Domain finite_set() { return {Kind::finite_set, 1, nullptr, nullptr}; }
  static Domain disjoint_union(Domain l, Domain r);

  bool scalar() const {
    return (kind == Kind::disk || kind == Kind::plane) && dim == 1;
  }
  bool same_as(const Domain& o) const;
  std::string describe() const;
};

/// Kernel evaluation carried in log space: K = exp(log_abs + i phase), with
/// an explicit zero flag since log of zero is not representable. The phase is
/// kept unwrapped where the family provides an analytic logarithm, so powers
/// stay on the diagonal-connected branch.
struct LogEval {
  double log_abs = 0.0;
  double phase = 0.0;
  bool zero = false;
  bool principal_phase = false;  // phase came from std::arg, cut on (-inf,0]

  Complex value() const {
    return zero ? Complex(0) : std::polar(std::exp(log_abs), phase);
  }
  static LogEval from_value(Complex v) {
    if (v == Complex(0)) return LogEval{0, 0, true, true};
    return LogEval{std::log(std::abs(v)), std::arg(v), false, true};
  }
};

/// First-order kernel data at a pair (x, y): writing the kernel as a function
/// A(x, conj(y)) holomorphic in both slots,
///   a    = A            d10 = dA/dx
///   d01  = dA/d(conj y) d11 = d2A/dx d(conj y).
/// This is exactly what evaluation-plus-derivative functionals need.
struct KernelJet {
  Complex a, d10, d01, d11;
};

/// The complex number <k^_x, k^_y> with a stable magnitude/phase
/// decomposition. one_minus_magnitude is computed without cancellation and is
/// the quantity all the distance functions consume.
struct NormalizedPairing {
  Complex value;
  double magnitude = 0.0;            // = cos(theta), in [0, 1]
  double phase = 0.0;                // in [0, 2*pi)
  double one_minus_magnitude = 0.0;  // 1 - magnitude, full relative accuracy
};

/// Dense Hermitian matrix of pairwise kernel values with its PSD verdict.
struct GramMatrix {
  std::vector<Point> points;
  Eigen::MatrixXcd entries;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  bool psd = false;
};

/// Nonvanishing scaling function G for rescaled spaces GH. The derivative is
/// optional; without it the rescaled kernel exposes no analytic jet.
struct ScalingFunction {
  std::string name;
  std::function<Complex(const Point&)> g;
  std::function<Complex(const Point&)> dg;  // may be empty

  static const ScalingFunction& builtin(const std::string& name);
  static std::vector<std::string> builtin_names();
};

namespace detail {
class KernelNode;
}

/// A closed, composable description of a positive-definite kernel K(.,.).
/// Value type; cheap to copy. All evaluations are pure and thread-safe.
class Kernel {
 public:
  // families
  static Kernel dhb(double alpha);
  static Kernel fock(double beta);
  static Kernel drury_arveson(int n);
  static Kernel finite_length_example();
  static Kernel radial_bergman(std::vector<double> moments);
  static Kernel custom(std::vector<Point> points, Eigen::MatrixXcd gram);

  // algebra
  static Kernel product(Kernel a, Kernel b);
  static Kernel power(Kernel base, double exponent);
  static Kernel rescale(Kernel base, ScalingFunction g);
  static Kernel direct_sum(Kernel left, Kernel right);

  /// K(x, y) = k_y(x). Hermitian: K(x, y) = conj(K(y, x)).
  Complex eval(const Point& x, const Point& y) const;
  LogEval log_eval(const Point& x, const Point& y) const;

  /// ||k_x|| = sqrt(K(x, x)), the largest value Re f(x) can take on the unit
  /// ball of the space.
  double norm_at(const Point& x) const;

  NormalizedPairing normalized_pairing(const Point& x, const Point& y) const;

  GramMatrix gram(std::span<const Point> points) const;

  bool has_jet() const;
  KernelJet jet(const Point& x, const Point& y) const;

  bool complete_np() const;
  const Domain& domain() const;
  void validate_point(const Point& p) const;

  /// Attached truncation-error estimate for series kernels; 0 for closed
  /// forms. Throws ValidationError when the estimated tail exceeds 1e-8.
  double tail_bound(const Point& x, const Point& y) const;

  /// Round-trips through the kernel-spec mini-language.
  std::string to_string() const;

  const detail::KernelNode& node() const { return *node_; }

 private:
  explicit Kernel(std::shared_ptr<const detail::KernelNode> n)
      : node_(std::move(n)) {}
  std::shared_ptr<const detail::KernelNode> node_;
};

/// Moments ||z^n||^2 of a radial weight v(|z|) on the unit disk, by adaptive
/// Gauss-Kronrod quadrature to relative 1e-10: m_n = 2 pi Int r^(2n+1) v(r) dr.
std::vector<double> moments_from_radial_weight(
    const std::function<double(double)>& v, int count = 512);

namespace detail {

class KernelNode {
 public:
  virtual ~KernelNode() = default;
  virtual LogEval log_eval(const Point& x, const Point& y) const = 0;
  virtual Complex eval(const Point& x, const Point& y) const {
    return log_eval(x, y).value();
  }
  virtual const Domain& domain() const = 0;
  virtual void validate_point(const Point& p) const;
  virtual bool has_jet() const { return false; }
  virtual KernelJet jet(const Point&, const Point&) const {
    throw UnsupportedError("kernel family provides no analytic derivatives");
  }
  virtual bool complete_np() const { return false; }
  virtual double tail_bound(const Point&, const Point&) const { return 0.0; }
  virtual std::optional<double> dhb_alpha_param() const { return std::nullopt; }
  virtual void render(std::string& out) const = 0;
};

/// log(1 + w) for complex w, accurate for small |w|.
Complex clog1p(Complex w);

}  // namespace detail

}  // namespace rkhs
