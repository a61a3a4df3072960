#include "rkhs/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace rkhs {

namespace detail {

Complex clog1p(Complex w) {
  // log|1+w| = (1/2) log1p(2 Re w + |w|^2) gains accuracy for small |w|; for
  // |w| near or above 1 the inner expression itself cancels, so evaluate
  // 1 + w directly there
  if (std::abs(w) < 0.5) {
    const double t = 2.0 * w.real() + std::norm(w);
    return {0.5 * std::log1p(t), std::atan2(w.imag(), 1.0 + w.real())};
  }
  const Complex s = 1.0 + w;
  if (s == Complex(0)) throw UndefinedValue("log of zero kernel value");
  return {std::log(std::abs(s)), std::atan2(s.imag(), s.real())};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_scalar(const Point& p, const char* family) {
  if (p.dim() != 1)
    throw DomainError(std::string(family) + ": expected a scalar point, got " +
                      p.to_string());
}

void require_in_disk(const Point& p, const char* family) {
  require_scalar(p, family);
  if (!(std::abs(p.z()) < 1.0))
    throw DomainError(std::string(family) + ": coords[0] = " + p.to_string() +
                      " is not in the open unit disk");
}

void require_in_ball(const Point& p, int n) {
  if (p.dim() != n)
    throw DomainError("ball domain: expected dimension " + std::to_string(n) +
                      ", got " + std::to_string(p.dim()));
  if (!(p.norm() < 1.0))
    throw DomainError("ball domain: point " + p.to_string() +
                      " has norm >= 1 (coords[" +
                      std::to_string(p.dim() - 1) + "] reached the boundary)");
}

// ---------------------------------------------------------------------------
// Dirichlet-Hardy-Bergman scale  K_alpha(x, y) = (1 - conj(y) x)^(-alpha),
// with the alpha = 0 limit  K_0 = log(1/(1-u))/u,  u = conj(y) x.
// ---------------------------------------------------------------------------

class DhbNode final : public KernelNode {
 public:
  explicit DhbNode(double alpha) : alpha_(alpha), dom_(Domain::disk()) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
      throw ValidationError("dhb: alpha must be >= 0, got " + fmt(alpha));
  }

  double alpha() const { return alpha_; }

  LogEval log_eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex u = std::conj(y.z()) * x.z();
    if (alpha_ == 0.0) return LogEval::from_value(dirichlet_value(u));
    const Complex l = clog1p(-u);  // log(1-u), Re(1-u) > 0 on the disk
    return {-alpha_ * l.real(), -alpha_ * l.imag(), false, false};
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    require_in_disk(p, "dhb");
  }

  bool has_jet() const override { return true; }
  KernelJet jet(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex xz = x.z(), yb = std::conj(y.z());
    const Complex u = yb * xz;
    if (alpha_ == 0.0) {
      Complex g, g1, g2;
      dirichlet_jet(u, g, g1, g2);
      return {g, g1 * yb, g1 * xz, g1 + g2 * u};
    }
    const Complex l = clog1p(-u);
    const Complex p1 = std::exp(-(alpha_ + 1.0) * l);  // (1-u)^-(a+1)
    const Complex p2 = std::exp(-(alpha_ + 2.0) * l);
    return {std::exp(-alpha_ * l), alpha_ * yb * p1, alpha_ * xz * p1,
            alpha_ * p1 + alpha_ * (alpha_ + 1.0) * u * p2};
  }

  bool complete_np() const override { return alpha_ <= 1.0; }
  std::optional<double> dhb_alpha_param() const override { return alpha_; }

  void render(std::string& out) const override {
    out += "dhb:alpha=" + fmt(alpha_);
  }

  static Complex dirichlet_value(Complex u) {
    if (std::abs(u) < 1e-3) {
      // log(1/(1-u))/u = sum u^n/(n+1); truncation below 1e-22 here
      Complex s = 0;
      for (int n = 7; n >= 0; --n) s = s * u + Complex(1.0 / (n + 1));
      return s;
    }
    return -clog1p(-u) / u;
  }

  // g = sum u^n/(n+1), g1 = sum n u^(n-1)/(n+1), g2 = sum n(n-1) u^(n-2)/(n+1)
  static void dirichlet_jet(Complex u, Complex& g, Complex& g1, Complex& g2) {
    if (std::abs(u) < 0.2) {
      g = 1;
      g1 = g2 = 0;
      Complex un = 1;  // u^(n-2), tracked from n = 2
      for (int n = 2; n < 120; ++n) {
        const double c = 1.0 / (n + 1);
        g2 += double(n) * double(n - 1) * c * un;
        g1 += double(n) * c * un * u;
        g += c * un * u * u;
        un *= u;
        if (std::abs(un) * n * n < 1e-20 && n > 6) break;
      }
      g1 += 0.5;  // n = 1 term of g1
      g += 0.5 * u;
      return;
    }
    const Complex l = clog1p(-u);           // log(1-u)
    const Complex w = 1.0 / (1.0 - u);      // 1/(1-u)
    const Complex u2 = u * u;
    g = -l / u;
    g1 = (u * w + l) / u2;
    g2 = (u2 * w * w - 2.0 * u * w - 2.0 * l) / (u2 * u);
  }

 private:
  double alpha_;
  Domain dom_;
};

// ---------------------------------------------------------------------------
// Fock-Segal-Bargmann scale. The printed kernel e^(beta z w) is not
// Hermitian; we evaluate the Hermitian form e^(beta x conj(y)).
// ---------------------------------------------------------------------------

class FockNode final : public KernelNode {
 public:
  explicit FockNode(double beta) : beta_(beta), dom_(Domain::plane()) {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw ValidationError("fock: beta must be > 0, got " + fmt(beta));
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex e = beta_ * x.z() * std::conj(y.z());
    return {e.real(), e.imag(), false, false};
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    require_scalar(p, "fock");
  }

  bool has_jet() const override { return true; }
  KernelJet jet(const Point& x, const Point& y) const override {
    const Complex xz = x.z(), yb = std::conj(y.z());
    const Complex a = std::exp(beta_ * xz * yb);
    return {a, beta_ * yb * a, beta_ * xz * a,
            (beta_ + beta_ * beta_ * xz * yb) * a};
  }

  void render(std::string& out) const override {
    out += "fock:beta=" + fmt(beta_);
  }

 private:
  double beta_;
  Domain dom_;
};

// ---------------------------------------------------------------------------
// Drury-Arveson space on the unit n-ball, K_n(x, y) = 1/(1 - <x, y>).
// ---------------------------------------------------------------------------

class DruryArvesonNode final : public KernelNode {
 public:
  explicit DruryArvesonNode(int n) : n_(n), dom_(Domain::ball(n)) {
    if (n < 1) throw ValidationError("da: n must be >= 1");
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex l = clog1p(-hermitian_dot(x, y));
    return {-l.real(), -l.imag(), false, false};
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    require_in_ball(p, n_);
  }

  bool has_jet() const override { return n_ == 1; }
  KernelJet jet(const Point& x, const Point& y) const override {
    if (n_ != 1) throw UnsupportedError("da: jet only for n = 1");
    const Complex xz = x.z(), yb = std::conj(y.z());
    const Complex l = clog1p(-yb * xz);
    const Complex p1 = std::exp(-2.0 * l), p2 = std::exp(-3.0 * l);
    return {std::exp(-l), yb * p1, xz * p1, p1 + 2.0 * xz * yb * p2};
  }

  bool complete_np() const override { return true; }

  void render(std::string& out) const override {
    out += "da:n=" + std::to_string(n_);
  }

 private:
  int n_;
  Domain dom_;
};

// ---------------------------------------------------------------------------
// The finite-length-curve example K(x, y) = (2 - x - conj(y))/(1 - conj(y) x):
// the Bergman-style density stays integrable up to the boundary along [0, 1).
// ---------------------------------------------------------------------------

class FiniteLengthNode final : public KernelNode {
 public:
  FiniteLengthNode() : dom_(Domain::disk()) {}

  Complex eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex xz = x.z(), yb = std::conj(y.z());
    return (2.0 - xz - yb) / (1.0 - yb * xz);
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    return LogEval::from_value(eval(x, y));
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    require_in_disk(p, "finite-length-example");
  }

  bool has_jet() const override { return true; }
  KernelJet jet(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex xz = x.z(), yb = std::conj(y.z());
    const Complex q = 1.0 - yb * xz, q2 = q * q, q3 = q2 * q;
    const Complex mx = 1.0 - xz, my = 1.0 - yb;
    return {(2.0 - xz - yb) / q, -my * my / q2, -mx * mx / q2,
            2.0 * mx * my / q3};
  }

  void render(std::string& out) const override {
    out += "finite-length-example";
  }

 private:
  Domain dom_;
};

// ---------------------------------------------------------------------------
// Weighted radial Bergman kernel from monomial moments:
//   K(x, y) = sum_{n=0}^{N} u^n / m_n,  u = x conj(y),  m_n = ||z^n||^2.
// Truncated series; a geometric-ratio tail estimate is attached and
// evaluation refuses to proceed when the estimate exceeds 1e-8.
// ---------------------------------------------------------------------------

class RadialBergmanNode final : public KernelNode {
 public:
  explicit RadialBergmanNode(std::vector<double> moments)
      : moments_(std::move(moments)), dom_(Domain::disk()) {
    if (moments_.size() < 3)
      throw ValidationError("radial-bergman: need moments for n = 0..N, N >= 2");
    coeff_.reserve(moments_.size());
    for (std::size_t n = 0; n < moments_.size(); ++n) {
      if (!(moments_[n] > 0.0) || !std::isfinite(moments_[n]))
        throw ValidationError("radial-bergman: moment " + std::to_string(n) +
                              " must be positive, got " + fmt(moments_[n]));
      coeff_.push_back(1.0 / moments_[n]);
    }
    // worst growth ratio of the trailing coefficients, for tail estimates
    ratio_ = 1.0;
    const std::size_t lo = coeff_.size() > 8 ? coeff_.size() - 8 : 1;
    for (std::size_t n = lo; n < coeff_.size(); ++n)
      ratio_ = std::max(ratio_, coeff_[n] / coeff_[n - 1]);
  }

  const std::vector<double>& moments() const { return moments_; }

  Complex eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex u = x.z() * std::conj(y.z());
    Complex s = 0;
    for (std::size_t n = coeff_.size(); n-- > 0;) s = s * u + coeff_[n];
    const double tail = tail_estimate(std::abs(u));
    if (!(tail <= 1e-8 * std::max(std::abs(s), 1e-300)))
      throw ValidationError(
          "radial-bergman: truncation tail estimate " + fmt(tail) +
          " exceeds 1e-8 of the partial sum near |u| = " + fmt(std::abs(u)));
    return s;
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    return LogEval::from_value(eval(x, y));
  }

  double tail_bound(const Point& x, const Point& y) const override {
    return tail_estimate(std::abs(x.z() * std::conj(y.z())));
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    require_in_disk(p, "radial-bergman");
  }

  bool has_jet() const override { return true; }
  KernelJet jet(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    const Complex xz = x.z(), yb = std::conj(y.z());
    const Complex u = xz * yb;
    const std::size_t N = coeff_.size();
    Complex s = 0, s1 = 0, s2 = 0;
    for (std::size_t n = N; n-- > 0;) s = s * u + coeff_[n];
    // S'(u) = sum_{n>=1} n c_n u^(n-1),  S''(u) = sum_{n>=2} n(n-1) c_n u^(n-2)
    for (std::size_t n = N; n-- > 1;) s1 = s1 * u + double(n) * coeff_[n];
    for (std::size_t n = N; n-- > 2;)
      s2 = s2 * u + double(n) * double(n - 1) * coeff_[n];
    return {s, yb * s1, xz * s1, s1 + u * s2};
  }

  void render(std::string& out) const override {
    out += "radial-bergman:moments=[";
    for (std::size_t n = 0; n < moments_.size(); ++n) {
      if (n) out += ",";
      out += fmt(moments_[n]);
    }
    out += "]";
  }

 private:
  double tail_estimate(double t) const {
    if (t >= 1.0) return INFINITY;
    const double q = ratio_ * t;
    const double head = coeff_.back() * std::pow(t, double(coeff_.size()));
    if (q >= 1.0) return INFINITY;
    return head * ratio_ * t / (1.0 - q) + head;
  }

  std::vector<double> moments_;
  std::vector<double> coeff_;
  double ratio_;
  Domain dom_;
};

// ---------------------------------------------------------------------------
// Custom kernel: explicit Hermitian PSD matrix over a fixed point list.
// ---------------------------------------------------------------------------

class CustomNode final : public KernelNode {
 public:
  CustomNode(std::vector<Point> points, Eigen::MatrixXcd gram)
      : points_(std::move(points)), gram_(std::move(gram)),
        dom_(Domain::finite_set()) {
    const auto m = static_cast<Eigen::Index>(points_.size());
    if (m == 0 || gram_.rows() != m || gram_.cols() != m)
      throw ValidationError("custom: gram size must match the point list");
    const double scale = gram_.cwiseAbs().maxCoeff();
    if ((gram_ - gram_.adjoint()).cwiseAbs().maxCoeff() >
        1e-12 * std::max(scale, 1.0))
      throw ValidationError("custom: matrix is not Hermitian");
    gram_ = (gram_ + gram_.adjoint()) / 2.0;  // exact Hermitian storage
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_,
                                                       Eigen::EigenvaluesOnly);
    const double tr = gram_.trace().real();
    if (es.eigenvalues().minCoeff() < -1e-10 * std::max(tr, 0.0))
      throw ValidationError("custom: matrix is not PSD (min eigenvalue " +
                            fmt(es.eigenvalues().minCoeff()) + ")");
  }

  Complex eval(const Point& x, const Point& y) const override {
    return gram_(index_of(x), index_of(y));
  }
  LogEval log_eval(const Point& x, const Point& y) const override {
    return LogEval::from_value(eval(x, y));
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override { index_of(p); }

  void render(std::string& out) const override {
    out += "custom:points=" + std::to_string(points_.size());
  }

 private:
  Eigen::Index index_of(const Point& p) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == p) return static_cast<Eigen::Index>(i);
    throw DomainError("custom: point " + p.to_string() +
                      " is not one of the declared points");
  }

  std::vector<Point> points_;
  Eigen::MatrixXcd gram_;
  Domain dom_;
};

// ---------------------------------------------------------------------------
// Kernel algebra: product, power, rescale, direct sum.
// ---------------------------------------------------------------------------

bool admits_power(const KernelNode& n);

class ProductNode final : public KernelNode {
 public:
  ProductNode(std::shared_ptr<const KernelNode> a,
              std::shared_ptr<const KernelNode> b)
      : a_(std::move(a)), b_(std::move(b)) {
    if (!a_->domain().same_as(b_->domain()))
      throw ValidationError("product: operands must share a domain (" +
                            a_->domain().describe() + " vs " +
                            b_->domain().describe() + ")");
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    const LogEval la = a_->log_eval(x, y), lb = b_->log_eval(x, y);
    if (la.zero || lb.zero) return {0, 0, true, false};
    return {la.log_abs + lb.log_abs, la.phase + lb.phase, false,
            la.principal_phase || lb.principal_phase};
  }

  const Domain& domain() const override { return a_->domain(); }
  void validate_point(const Point& p) const override { a_->validate_point(p); }

  bool has_jet() const override { return a_->has_jet() && b_->has_jet(); }
  KernelJet jet(const Point& x, const Point& y) const override {
    const KernelJet ja = a_->jet(x, y), jb = b_->jet(x, y);
    return {ja.a * jb.a, ja.d10 * jb.a + ja.a * jb.d10,
            ja.d01 * jb.a + ja.a * jb.d01,
            ja.d11 * jb.a + ja.d10 * jb.d01 + ja.d01 * jb.d10 + ja.a * jb.d11};
  }

  double tail_bound(const Point& x, const Point& y) const override {
    return a_->tail_bound(x, y) + b_->tail_bound(x, y);
  }

  const KernelNode& left() const { return *a_; }
  const KernelNode& right() const { return *b_; }

  void render(std::string& out) const override {
    out += "product(";
    a_->render(out);
    out += ",";
    b_->render(out);
    out += ")";
  }

 private:
  std::shared_ptr<const KernelNode> a_, b_;
};

class PowerNode final : public KernelNode {
 public:
  PowerNode(std::shared_ptr<const KernelNode> base, double exponent)
      : base_(std::move(base)), exponent_(exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent))
      throw ValidationError("power: exponent must be > 0, got " +
                            fmt(exponent));
    if (!admits_power(*base_))
      throw ValidationError(
          "power: base family does not support fractional powers "
          "(positivity of K^alpha is only known for dhb/fock/da and their "
          "products)");
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    const LogEval lb = base_->log_eval(x, y);
    if (lb.zero) return lb;
    if (lb.principal_phase && std::cos(lb.phase) < 0.0)
      throw BranchError(
          "power: base kernel value crossed into the left half-plane; the "
          "principal branch is not continuous along the evaluation path");
    return {exponent_ * lb.log_abs, exponent_ * lb.phase, false,
            lb.principal_phase};
  }

  const Domain& domain() const override { return base_->domain(); }
  void validate_point(const Point& p) const override {
    base_->validate_point(p);
  }

  bool has_jet() const override { return base_->has_jet(); }
  KernelJet jet(const Point& x, const Point& y) const override {
    const KernelJet j = base_->jet(x, y);
    const LogEval lb = base_->log_eval(x, y);
    if (lb.zero) throw UndefinedValue("power: jet at a kernel zero");
    const Complex l(lb.log_abs, lb.phase);
    const Complex am1 = std::exp((exponent_ - 1.0) * l);
    const Complex am2 = std::exp((exponent_ - 2.0) * l);
    const double a = exponent_;
    return {std::exp(a * l), a * am1 * j.d10, a * am1 * j.d01,
            a * am1 * j.d11 + a * (a - 1.0) * am2 * j.d10 * j.d01};
  }

  double tail_bound(const Point& x, const Point& y) const override {
    return exponent_ * base_->tail_bound(x, y);
  }

  const KernelNode& base() const { return *base_; }

  void render(std::string& out) const override {
    out += "power(";
    base_->render(out);
    out += "," + fmt(exponent_) + ")";
  }

 private:
  std::shared_ptr<const KernelNode> base_;
  double exponent_;
};

class RescaleNode final : public KernelNode {
 public:
  RescaleNode(std::shared_ptr<const KernelNode> base, ScalingFunction g)
      : base_(std::move(base)), g_(std::move(g)) {
    if (!g_.g) throw ValidationError("rescale: missing scaling function");
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    const LogEval lb = base_->log_eval(x, y);
    if (lb.zero) return lb;
    const Complex gx = g_.g(x), gy = g_.g(y);
    if (gx == Complex(0) || gy == Complex(0))
      throw ValidationError("rescale: scaling function vanishes at " +
                            (gx == Complex(0) ? x : y).to_string());
    return {lb.log_abs + std::log(std::abs(gx)) + std::log(std::abs(gy)),
            lb.phase + std::arg(gx) - std::arg(gy), false, true};
  }

  const Domain& domain() const override { return base_->domain(); }
  void validate_point(const Point& p) const override {
    base_->validate_point(p);
  }

  bool has_jet() const override {
    return base_->has_jet() && static_cast<bool>(g_.dg);
  }
  KernelJet jet(const Point& x, const Point& y) const override {
    const KernelJet j = base_->jet(x, y);
    const Complex gx = g_.g(x), gyb = std::conj(g_.g(y));
    const Complex dgx = g_.dg(x), dgyb = std::conj(g_.dg(y));
    return {gx * gyb * j.a, dgx * gyb * j.a + gx * gyb * j.d10,
            gx * dgyb * j.a + gx * gyb * j.d01,
            dgx * dgyb * j.a + dgx * gyb * j.d01 + gx * dgyb * j.d10 +
                gx * gyb * j.d11};
  }

  double tail_bound(const Point& x, const Point& y) const override {
    return base_->tail_bound(x, y);
  }

  void render(std::string& out) const override {
    out += "rescale(";
    base_->render(out);
    out += "," + g_.name + ")";
  }

 private:
  std::shared_ptr<const KernelNode> base_;
  ScalingFunction g_;
};

class DirectSumNode final : public KernelNode {
 public:
  DirectSumNode(std::shared_ptr<const KernelNode> l,
                std::shared_ptr<const KernelNode> r)
      : l_(std::move(l)), r_(std::move(r)) {
    if (l_->domain().kind == Domain::Kind::disjoint_union ||
        r_->domain().kind == Domain::Kind::disjoint_union)
      throw ValidationError("direct-sum: nested direct sums not supported");
    dom_ = Domain::disjoint_union(l_->domain(), r_->domain());
  }

  LogEval log_eval(const Point& x, const Point& y) const override {
    validate_point(x);
    validate_point(y);
    if (x.side != y.side) return {0, 0, true, false};
    Point xs = x, ys = y;
    xs.side = ys.side = 0;
    return (x.side == 0 ? l_ : r_)->log_eval(xs, ys);
  }

  const Domain& domain() const override { return dom_; }
  void validate_point(const Point& p) const override {
    if (p.side > 1)
      throw DomainError("direct-sum: side tag must be 0 or 1, got " +
                        std::to_string(int(p.side)));
    Point q = p;
    q.side = 0;
    (p.side == 0 ? l_ : r_)->validate_point(q);
  }

  void render(std::string& out) const override {
    out += "direct-sum(";
    l_->render(out);
    out += ",";
    r_->render(out);
    out += ")";
  }

 private:
  std::shared_ptr<const KernelNode> l_, r_;
  Domain dom_;
};

bool admits_power(const KernelNode& n) {
  if (auto d = dynamic_cast<const DhbNode*>(&n)) return d->alpha() > 0.0;
  if (dynamic_cast<const FockNode*>(&n)) return true;
  if (dynamic_cast<const DruryArvesonNode*>(&n)) return true;
  if (dynamic_cast<const CustomNode*>(&n)) return true;  // branch-guarded
  if (auto p = dynamic_cast<const ProductNode*>(&n))
    return admits_power(p->left()) && admits_power(p->right());
  if (auto p = dynamic_cast<const PowerNode*>(&n))
    return admits_power(p->base());
  return false;
}

}  // namespace

void KernelNode::validate_point(const Point&) const {}

}  // namespace detail

// ---------------------------------------------------------------------------
// Domain
// ---------------------------------------------------------------------------

Domain Domain::disjoint_union(Domain l, Domain r) {
  Domain d;
  d.kind = Kind::disjoint_union;
  d.left = std::make_shared<Domain>(std::move(l));
  d.right = std::make_shared<Domain>(std::move(r));
  return d;
}

bool Domain::same_as(const Domain& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::ball && dim != o.dim) return false;
  if (kind == Kind::disjoint_union)
    return left->same_as(*o.left) && right->same_as(*o.right);
  return true;
}

std::string Domain::describe() const {
  switch (kind) {
    case Kind::disk: return "unit disk";
    case Kind::plane: return "complex plane";
    case Kind::ball: return "unit ball in C^" + std::to_string(dim);
    case Kind::disjoint_union:
      return left->describe() + " + " + right->describe();
    case Kind::finite_set: return "declared finite point set";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ScalingFunction builtins
// ---------------------------------------------------------------------------

const ScalingFunction& ScalingFunction::builtin(const std::string& name) {
  static const std::vector<ScalingFunction> table = {
      {"one", [](const Point&) { return Complex(1); },
       [](const Point&) { return Complex(0); }},
      {"affine", [](const Point& p) { return 1.0 + 0.5 * p.z(); },
       [](const Point&) { return Complex(0.5); }},
      {"exp", [](const Point& p) { return std::exp(p.z()); },
       [](const Point& p) { return std::exp(p.z()); }},
      {"cayley", [](const Point& p) { return 2.0 / (2.0 - p.z()); },
       [](const Point& p) {
         const Complex d = 2.0 - p.z();
         return 2.0 / (d * d);
       }},
  };
  for (const auto& s : table)
    if (s.name == name) return s;
  throw ValidationError("rescale: unknown builtin scaling function '" + name +
                        "'");
}

std::vector<std::string> ScalingFunction::builtin_names() {
  return {"one", "affine", "exp", "cayley"};
}

// ---------------------------------------------------------------------------
// Kernel facade
// ---------------------------------------------------------------------------

Kernel Kernel::dhb(double alpha) {
  return Kernel(std::make_shared<const detail::DhbNode>(alpha));
}
Kernel Kernel::fock(double beta) {
  return Kernel(std::make_shared<const detail::FockNode>(beta));
}
Kernel Kernel::drury_arveson(int n) {
  return Kernel(std::make_shared<const detail::DruryArvesonNode>(n));
}
Kernel Kernel::finite_length_example() {
  return Kernel(std::make_shared<const detail::FiniteLengthNode>());
}
Kernel Kernel::radial_bergman(std::vector<double> moments) {
  return Kernel(
      std::make_shared<const detail::RadialBergmanNode>(std::move(moments)));
}
Kernel Kernel::custom(std::vector<Point> points, Eigen::MatrixXcd gram) {
  return Kernel(std::make_shared<const detail::CustomNode>(std::move(points),
                                                           std::move(gram)));
}
Kernel Kernel::product(Kernel a, Kernel b) {
  return Kernel(std::make_shared<const detail::ProductNode>(a.node_, b.node_));
}
Kernel Kernel::power(Kernel base, double exponent) {
  return Kernel(
      std::make_shared<const detail::PowerNode>(base.node_, exponent));
}
Kernel Kernel::rescale(Kernel base, ScalingFunction g) {
  return Kernel(
      std::make_shared<const detail::RescaleNode>(base.node_, std::move(g)));
}
Kernel Kernel::direct_sum(Kernel l, Kernel r) {
  return Kernel(
      std::make_shared<const detail::DirectSumNode>(l.node_, r.node_));
}

Complex Kernel::eval(const Point& x, const Point& y) const {
  return node_->eval(x, y);
}
LogEval Kernel::log_eval(const Point& x, const Point& y) const {
  return node_->log_eval(x, y);
}

double Kernel::norm_at(const Point& x) const {
  const LogEval l = node_->log_eval(x, x);
  if (l.zero) return 0.0;
  if (std::abs(std::sin(l.phase)) > 1e-8)
    throw InconsistencyError("K(x,x) is not real positive at " +
                             x.to_string());
  if (std::cos(l.phase) < 0.0)
    throw InconsistencyError("K(x,x) < 0 at " + x.to_string() +
                             ": kernel misconfigured");
  return std::exp(0.5 * l.log_abs);
}

NormalizedPairing Kernel::normalized_pairing(const Point& x,
                                             const Point& y) const {
  const LogEval lxx = node_->log_eval(x, x), lyy = node_->log_eval(y, y);
  if (lxx.zero || lyy.zero)
    throw UndefinedValue("undefined pairing: zero kernel function at " +
                         (lxx.zero ? x : y).to_string());
  const LogEval lxy = node_->log_eval(x, y);

  NormalizedPairing p;
  if (lxy.zero) {
    p.value = 0;
    p.magnitude = 0;
    p.one_minus_magnitude = 1.0;
    p.phase = 0;
    return p;
  }
  // grouping the diagonal terms keeps the expression exactly symmetric in
  // (x, y); addition commutes bitwise, chained subtraction does not
  const double s = lxy.log_abs - 0.5 * (lxx.log_abs + lyy.log_abs);
  const double m = std::exp(s);
  if (!(m <= 1.0 + 1e-12))
    throw InconsistencyError("pairing magnitude " + std::to_string(m) +
                             " exceeds 1: PSD violation");
  p.magnitude = std::min(m, 1.0);
  p.one_minus_magnitude = -std::expm1(std::min(s, 0.0));
  p.value = std::polar(p.magnitude, lxy.phase);
  double ph = std::fmod(lxy.phase, detail::kTwoPi);
  if (ph < 0) ph += detail::kTwoPi;
  p.phase = ph;
  if (x == y && p.value != Complex(1)) {
    throw InconsistencyError("pairing of a point with itself is not 1");
  }
  return p;
}

GramMatrix Kernel::gram(std::span<const Point> points) const {
  const auto m = static_cast<Eigen::Index>(points.size());
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      if (points[i] == points[j])
        throw ValidationError("gram: duplicate points at indices " +
                              std::to_string(i) + " and " + std::to_string(j));
  GramMatrix g;
  g.points.assign(points.begin(), points.end());
  g.entries.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g.entries(i, j) = node_->eval(points[i], points[j]);
  const double scale = m ? g.entries.cwiseAbs().maxCoeff() : 0.0;
  if ((g.entries - g.entries.adjoint()).cwiseAbs().maxCoeff() >
      1e-14 * std::max(scale, 1e-30))
    throw InconsistencyError("gram: evaluations are not Hermitian");
  g.trace = g.entries.trace().real();
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g.entries,
                                                       Eigen::EigenvaluesOnly);
    g.min_eigenvalue = es.eigenvalues().minCoeff();
  }
  g.psd = g.min_eigenvalue >= -1e-10 * std::max(g.trace, 0.0);
  return g;
}

bool Kernel::has_jet() const { return node_->has_jet(); }
KernelJet Kernel::jet(const Point& x, const Point& y) const {
  return node_->jet(x, y);
}
bool Kernel::complete_np() const { return node_->complete_np(); }
const Domain& Kernel::domain() const { return node_->domain(); }
void Kernel::validate_point(const Point& p) const { node_->validate_point(p); }
double Kernel::tail_bound(const Point& x, const Point& y) const {
  return node_->tail_bound(x, y);
}

std::string Kernel::to_string() const {
  std::string s;
  node_->render(s);
  return s;
}

std::vector<double> moments_from_radial_weight(
    const std::function<double(double)>& v, int count) {
  if (count < 3) throw ValidationError("moments: need at least 3 moments");
  std::vector<double> m(count);
  for (int n = 0; n < count; ++n) {
    const auto f = [&](double r) { return std::pow(r, 2 * n + 1) * v(r); };
    double err = 0;
    m[n] = 2.0 * std::numbers::pi *
           boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
               f, 0.0, 1.0, 12, 1e-10, &err);
    if (!(m[n] > 0.0))
      throw ValidationError("moments: weight produced nonpositive moment " +
                            std::to_string(n));
  }
  return m;
}

}  // namespace rkhs
