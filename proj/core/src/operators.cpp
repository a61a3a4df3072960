#include "rkhs/operators.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <nlohmann/json.hpp>

#include "rkhs/metrics.hpp"
#include "rkhs/spec_string.hpp"

namespace rkhs {

std::shared_ptr<const SpanBasis> SpanBasis::build(const Kernel& k,
                                                  std::vector<Point> points) {
  auto b = std::make_shared<SpanBasis>(SpanBasis{
      k, std::move(points), {}, {}, false, 0.0, 0.0});
  GramMatrix g = k.gram(b->points);
  b->gram = (g.entries + g.entries.adjoint()) / 2.0;

  const double tr = std::max(g.trace, 1e-300);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b->gram,
                                                     Eigen::EigenvaluesOnly);
  double mineig = es.eigenvalues().minCoeff();
  if (mineig < 1e-12 * tr) {
    b->jitter = 1e-12 * tr;
    b->jittered = true;
    b->gram += b->jitter * Eigen::MatrixXcd::Identity(b->size(), b->size());
    mineig += b->jitter;
  }
  b->condition = es.eigenvalues().maxCoeff() / std::max(mineig, 1e-300);

  Eigen::LLT<Eigen::MatrixXcd> llt(b->gram);
  if (llt.info() != Eigen::Success)
    throw ConditioningError(
        "span basis: Cholesky failed after jitter (condition ~ " +
        std::to_string(b->condition) + ")");
  b->chol = llt.matrixL();

  // factorization quality: gram = chol chol^H within 1e-12 relative
  const double scale = b->gram.cwiseAbs().maxCoeff();
  if ((b->chol * b->chol.adjoint() - b->gram).cwiseAbs().maxCoeff() >
      1e-12 * std::max(scale, 1.0))
    throw ConditioningError("span basis: factorization residual too large");
  return b;
}

Eigen::VectorXcd SpanBasis::solve(const Eigen::VectorXcd& rhs) const {
  return chol.triangularView<Eigen::Lower>()
      .adjoint()
      .solve(chol.triangularView<Eigen::Lower>().solve(rhs));
}

namespace {
void require_same_basis(const SpanOperator& a, const SpanOperator& b) {
  if (a.basis != b.basis)
    throw ValidationError("span operators live on different bases");
}
}  // namespace

SpanOperator SpanOperator::add(const SpanOperator& o) const {
  require_same_basis(*this, o);
  return {basis, coeffs + o.coeffs};
}
SpanOperator SpanOperator::sub(const SpanOperator& o) const {
  require_same_basis(*this, o);
  return {basis, coeffs - o.coeffs};
}
SpanOperator SpanOperator::scale(Complex c) const { return {basis, c * coeffs}; }

SpanOperator SpanOperator::compose(const SpanOperator& o) const {
  require_same_basis(*this, o);
  return {basis, coeffs * basis->gram * o.coeffs};
}

SpanOperator SpanOperator::adjoint() const {
  return {basis, coeffs.adjoint()};
}

bool SpanOperator::self_adjoint(double tol) const {
  const double scale = std::max(coeffs.cwiseAbs().maxCoeff(), 1e-300);
  return (coeffs - coeffs.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Eigen::MatrixXcd SpanOperator::orthonormal_matrix() const {
  return basis->chol.adjoint() * coeffs * basis->chol;
}

Eigen::VectorXcd SpanOperator::apply_to_kernel(const Point& y) const {
  const int m = basis->size();
  Eigen::VectorXcd v(m);
  for (int j = 0; j < m; ++j)
    v(j) = basis->kernel.eval(basis->points[j], y);  // <k_y, k_{x_j}>
  return coeffs * v;
}

SpanOperator projection(std::shared_ptr<const SpanBasis> basis, int index) {
  if (index < 0 || index >= basis->size())
    throw ValidationError("projection: index out of range");
  const double kxx = basis->gram(index, index).real() -
                     (basis->jittered ? basis->jitter : 0.0);
  if (!(kxx > 0.0))
    throw UndefinedValue("projection: zero kernel function at index " +
                         std::to_string(index));
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(basis->size(), basis->size());
  c(index, index) = 1.0 / kxx;
  return {std::move(basis), std::move(c)};
}

double schatten_norm(const SpanOperator& op, double p) {
  if (!(p >= 1.0))
    throw ValidationError("schatten norm: p must be >= 1 or infinity");
  const Eigen::MatrixXcd m = op.orthonormal_matrix();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (std::isinf(p)) return sv.size() ? sv.maxCoeff() : 0.0;
  double s = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) s += std::pow(sv(i), p);
  return std::pow(s, 1.0 / p);
}

Complex operator_trace(const SpanOperator& op) {
  return (op.coeffs * op.basis->gram).trace();
}

double commutator_norm(std::shared_ptr<const SpanBasis> basis, int i, int j) {
  if (i == j) return 0.0;
  const SpanOperator pi = projection(basis, i), pj = projection(basis, j);
  const SpanOperator comm = pi.compose(pj).sub(pj.compose(pi));
  return schatten_norm(comm, INFINITY);
}

Complex berezin(const SpanOperator& op, const Point& x) {
  const auto& k = op.basis->kernel;
  const LogEval lxx = k.log_eval(x, x);
  if (lxx.zero)
    throw UndefinedValue("berezin: zero kernel function at " + x.to_string());
  const int m = op.basis->size();
  Eigen::VectorXcd left(m), right(m);
  for (int i = 0; i < m; ++i) {
    left(i) = k.eval(x, op.basis->points[i]);   // <k_{x_i}, k_x> = K(x, x_i)
    right(i) = k.eval(op.basis->points[i], x);  // <k_x, k_{x_i}> = K(x_i, x)
  }
  const Complex v =
      (left.transpose() * op.coeffs * right)(0) / std::exp(lxx.log_abs);
  if (op.self_adjoint() && std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
    throw InconsistencyError(
        "berezin transform of a self-adjoint operator came out non-real");
  return v;
}

SpanOperator multiplier_adjoint_action(std::shared_ptr<const SpanBasis> basis,
                                       std::span<const Complex> symbol_values) {
  if (static_cast<int>(symbol_values.size()) != basis->size())
    throw ValidationError(
        "multiplier action: symbol values do not match the basis size");
  // C G = diag(conj m), so C = diag(conj m) G^{-1}; with G Hermitian,
  // C^H = G^{-1} diag(m), one triangular solve per column
  const int m = basis->size();
  Eigen::MatrixXcd rhs_h = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) rhs_h(i, i) = symbol_values[i];
  const auto& L = basis->chol;
  Eigen::MatrixXcd ch = L.triangularView<Eigen::Lower>().adjoint().solve(
      L.triangularView<Eigen::Lower>().solve(rhs_h));
  Eigen::MatrixXcd c = ch.adjoint();
  return {std::move(basis), std::move(c)};
}

ExtremalFunction extremal_function(const Kernel& k, const Point& z,
                                   const Point& w) {
  const NormalizedPairing p = k.normalized_pairing(z, w);
  const double d = std::sqrt(p.one_minus_magnitude *
                             (2.0 - p.one_minus_magnitude));
  if (!(d > 0.0))
    throw DegenerateError(
        "extremal function: the two points are indistinguishable "
        "(delta = 0)");
  const double nw = k.norm_at(w), nz = k.norm_at(z);
  const Complex kwz = k.eval(z, w);  // k_w(z) = K(z, w)
  const Complex cb = 1.0 / (nw * d);
  const Complex ca = -kwz / (nz * nz) * cb;
  ExtremalFunction out;
  out.value_at_w = nw * d;
  out.fn = [k, z, w, ca, cb](const Point& q) {
    return ca * k.eval(q, z) + cb * k.eval(q, w);
  };
  return out;
}

HankelGap hankel_gap_norm(std::shared_ptr<const SpanBasis> basis, int i,
                          int j) {
  HankelGap out;
  if (i == j) return out;
  const SpanOperator d = projection(basis, i).sub(projection(basis, j));
  // beta*beta = (P_i - P_j)^2; the form norm is ||(beta*beta)^(1/2)||, the
  // trace norm its trace
  const Eigen::MatrixXcd m = d.compose(d).orthonormal_matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      (m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  double mx = 0.0, tr = 0.0;
  for (Eigen::Index t = 0; t < es.eigenvalues().size(); ++t) {
    const double lam = std::max(es.eigenvalues()(t), 0.0);
    mx = std::max(mx, lam);
    tr += std::sqrt(lam);
  }
  out.norm = std::sqrt(mx);
  out.trace_norm = tr;
  return out;
}

VariationResult variation_along_curve(const SpanOperator& op,
                                      const Curve& curve, double tol) {
  const auto term = [&op](const Point& a, const Point& b) {
    return std::abs(berezin(op, a) - berezin(op, b));
  };
  const LengthResult var = refine_dyadic(term, curve, tol);

  const Kernel& k = op.basis->kernel;
  const DistanceFn dfn = [&k](const Point& a, const Point& b) {
    return delta(k, a, b);
  };
  const LengthResult len = curve_length(dfn, curve, tol);
  VariationResult out;
  out.value = var.value;
  out.converged = var.converged && len.converged;
  out.lipschitz_bound = 2.0 * schatten_norm(op, INFINITY) * len.value;
  out.within_bound = var.value <= out.lipschitz_bound + 1e-8;
  return out;
}

std::string span_operator_to_json(const SpanOperator& op) {
  nlohmann::ordered_json j;
  j["kernel"] = op.basis->kernel.to_string();
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : op.basis->points) {
    nlohmann::ordered_json e = {p.z().real(), p.z().imag()};
    if (p.dim() != 1) {
      e = nlohmann::ordered_json::array();
      for (const auto& c : p.coords) e.push_back({c.real(), c.imag()});
    }
    if (p.side != 0) e = {{"side", p.side}, {"point", e}};
    pts.push_back(e);
  }
  j["points"] = pts;
  auto rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < op.coeffs.rows(); ++r) {
    auto row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < op.coeffs.cols(); ++c)
      row.push_back({op.coeffs(r, c).real(), op.coeffs(r, c).imag()});
    rows.push_back(row);
  }
  j["coeffs"] = rows;
  return j.dump();
}

SpanOperator span_operator_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Kernel k = parse_kernel_spec(j.at("kernel").get<std::string>());
  std::vector<Point> pts;
  for (const auto& e : j.at("points")) {
    if (e.is_object()) {
      const auto& inner = e.at("point");
      Point p = inner.at(0).is_array()
                    ? Point(std::vector<Complex>{})
                    : Point(Complex(inner.at(0).get<double>(),
                                    inner.at(1).get<double>()));
      if (inner.at(0).is_array()) {
        std::vector<Complex> cs;
        for (const auto& c : inner)
          cs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        p = Point(std::move(cs));
      }
      p.side = static_cast<std::uint8_t>(e.at("side").get<int>());
      pts.push_back(p);
    } else if (e.at(0).is_array()) {
      std::vector<Complex> cs;
      for (const auto& c : e)
        cs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      pts.emplace_back(std::move(cs));
    } else {
      pts.emplace_back(Complex(e.at(0).get<double>(), e.at(1).get<double>()));
    }
  }
  auto basis = SpanBasis::build(k, std::move(pts));
  const auto& rows = j.at("coeffs");
  Eigen::MatrixXcd c(rows.size(), rows.size());
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index cc = 0; cc < c.cols(); ++cc) {
      const auto& e = rows.at(r).at(cc);
      c(r, cc) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  return {std::move(basis), std::move(c)};
}

}  // namespace rkhs
