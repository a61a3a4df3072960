#include "rkhs/subspaces.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

#include "rkhs/metrics.hpp"

namespace rkhs {

namespace {

struct Functional {
  Point at;
  int order = 1;  // 1 = evaluation, 2 = derivative
};

// L_i(k_x): the i-th functional applied to the kernel function of x
Complex functional_of_kernel(const Kernel& k, const Functional& f,
                             const Point& x) {
  if (f.order == 1) return k.eval(f.at, x);
  return k.jet(f.at, x).d10;
}

// G_ij = L_i(h_j) where h_j is the representer of L_j
Complex functional_gram_entry(const Kernel& k, const Functional& fi,
                              const Functional& fj) {
  const KernelJet j = (fi.order == 2 || fj.order == 2)
                          ? k.jet(fi.at, fj.at)
                          : KernelJet{k.eval(fi.at, fj.at), 0, 0, 0};
  if (fi.order == 1 && fj.order == 1) return j.a;
  if (fi.order == 1 && fj.order == 2) return j.d01;
  if (fi.order == 2 && fj.order == 1) return j.d10;
  return j.d11;
}

Complex blaschke_eval(const HardyInnerSpec& spec, Complex z) {
  Complex v = spec.unimodular;
  for (Complex a : spec.zeros) v *= (z - a) / (1.0 - std::conj(a) * z);
  return v;
}

}  // namespace

struct Subspace::Impl {
  Kernel parent;
  std::optional<VanishOnSpec> vanish;
  std::optional<HardyInnerSpec> hardy;

  // vanish-on data: functional Gram factorization
  std::vector<Functional> functionals;
  Eigen::LLT<Eigen::MatrixXcd> llt;
  bool jittered = false;

  Eigen::VectorXcd moment_vector(const Point& x) const {
    Eigen::VectorXcd v(functionals.size());
    for (std::size_t i = 0; i < functionals.size(); ++i)
      v(static_cast<Eigen::Index>(i)) =
          functional_of_kernel(parent, functionals[i], x);
    return v;
  }

  Impl() : parent(Kernel::dhb(1.0)) {}
};

Subspace Subspace::vanish_on(const Kernel& parent, VanishOnSpec spec) {
  auto impl = std::make_shared<Impl>();
  impl->parent = parent;
  if (spec.points.empty())
    throw ValidationError("vanish-on subspace needs at least one point");
  if (spec.orders.empty()) spec.orders.assign(spec.points.size(), 1);
  if (spec.orders.size() != spec.points.size())
    throw ValidationError("vanish-on: orders must match points");
  for (std::size_t i = 0; i < spec.points.size(); ++i) {
    parent.validate_point(spec.points[i]);
    const int o = spec.orders[i];
    if (o != 1 && o != 2)
      throw ValidationError("vanish-on: order flags must be 1 or 2");
    if (o == 2 && (!parent.domain().scalar() || !parent.has_jet()))
      throw ValidationError(
          "vanish-on: order 2 needs a scalar domain with analytic kernel "
          "derivatives");
    for (std::size_t j = i + 1; j < spec.points.size(); ++j)
      if (spec.points[i] == spec.points[j])
        throw ValidationError("vanish-on: duplicate points");
    impl->functionals.push_back({spec.points[i], 1});
    if (o == 2) impl->functionals.push_back({spec.points[i], 2});
  }

  const auto m = static_cast<Eigen::Index>(impl->functionals.size());
  Eigen::MatrixXcd g(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      g(i, j) = functional_gram_entry(parent, impl->functionals[i],
                                      impl->functionals[j]);
  g = (g + g.adjoint()) / 2.0;
  impl->llt.compute(g);
  if (impl->llt.info() != Eigen::Success) {
    const double tr = std::max(g.trace().real(), 1e-300);
    g += 1e-12 * tr * Eigen::MatrixXcd::Identity(m, m);
    impl->jittered = true;
    impl->llt.compute(g);
    if (impl->llt.info() != Eigen::Success)
      throw ConditioningError(
          "vanish-on: functional Gram is singular beyond jitter");
  }
  impl->vanish = std::move(spec);
  Subspace s;
  s.impl_ = std::move(impl);
  return s;
}

Subspace Subspace::hardy_inner(HardyInnerSpec spec) {
  auto impl = std::make_shared<Impl>();
  impl->parent = Kernel::dhb(1.0);
  if (spec.zeros.empty())
    throw ValidationError(
        "hardy-inner: Theta needs at least one zero (a constant Theta makes "
        "Jperp trivial)");
  if (std::abs(std::abs(spec.unimodular) - 1.0) > 1e-12)
    throw ValidationError("hardy-inner: front constant must be unimodular");
  for (Complex a : spec.zeros)
    if (!(std::abs(a) < 1.0))
      throw ValidationError("hardy-inner: zeros must lie in the open disk");
  impl->hardy = std::move(spec);
  Subspace s;
  s.impl_ = std::move(impl);
  return s;
}

const Kernel& Subspace::parent() const { return impl_->parent; }
bool Subspace::is_vanish_on() const { return impl_->vanish.has_value(); }
const VanishOnSpec* Subspace::vanish_spec() const {
  return impl_->vanish ? &*impl_->vanish : nullptr;
}
const HardyInnerSpec* Subspace::hardy_spec() const {
  return impl_->hardy ? &*impl_->hardy : nullptr;
}

Complex Subspace::theta(Complex z) const {
  if (!impl_->hardy)
    throw UnsupportedError("theta: only hardy-inner subspaces carry Theta");
  return blaschke_eval(*impl_->hardy, z);
}

std::pair<Complex, Complex> Subspace::kernels(const Point& x,
                                              const Point& y) const {
  const Complex k = impl_->parent.eval(x, y);
  if (impl_->hardy) {
    const Complex tx = blaschke_eval(*impl_->hardy, x.z());
    const Complex ty = blaschke_eval(*impl_->hardy, y.z());
    const Complex kj = std::conj(ty) * tx * k;
    return {kj, k - kj};
  }
  const Eigen::VectorXcd vx = impl_->moment_vector(x);
  const Eigen::VectorXcd vy = impl_->moment_vector(y);
  const Complex kperp = vx.dot(impl_->llt.solve(vy));  // v_x^H G^{-1} v_y
  return {k - kperp, kperp};
}

double delta_sub(const Subspace& s, SubspacePart part, const Point& x,
                 const Point& y) {
  const auto pick = [&](const Point& a, const Point& b) {
    const auto [kj, kp] = s.kernels(a, b);
    return part == SubspacePart::j ? kj : kp;
  };
  const double kxx = pick(x, x).real();
  const double kyy = pick(y, y).real();
  const double scale = std::max(std::abs(s.parent().eval(x, x)),
                                std::abs(s.parent().eval(y, y)));
  if (kxx <= 1e-13 * scale || kyy <= 1e-13 * scale)
    throw UndefinedValue(
        "undefined distance: subspace kernel vanishes at a query point");
  const Complex kxy = pick(x, y);
  const double m2 = std::min(1.0, std::norm(kxy) / (kxx * kyy));
  return std::sqrt(std::max(0.0, 1.0 - m2));
}

HardyInnerDeltas hardy_inner_delta(std::span<const Complex> theta_zeros,
                                   Complex x, Complex y) {
  HardyInnerSpec spec;
  spec.zeros.assign(theta_zeros.begin(), theta_zeros.end());
  if (spec.zeros.empty())
    throw ValidationError("hardy-inner: Theta needs at least one zero");
  for (Complex a : spec.zeros)
    if (!(std::abs(a) < 1.0))
      throw ValidationError("hardy-inner: zeros must lie in the open disk");
  const Complex tx = blaschke_eval(spec, x);
  const Complex ty = blaschke_eval(spec, y);
  const double r = rho_disk(x, y);
  const double rt = rho_disk(tx, ty);  // |Theta| < 1 inside the disk
  HardyInnerDeltas out;
  if (tx != Complex(0) && ty != Complex(0)) out.delta_j = r;
  const double num = std::max(0.0, r * r - rt * rt);
  out.delta_jperp = std::sqrt(num / (1.0 - rt * rt));
  return out;
}

ShapeData shape_invariant(const Kernel& k, const Point& x, const Point& y,
                          const Point& z) {
  if (x == y || y == z || x == z)
    throw ValidationError("shape invariant: points must be distinct");
  const NormalizedPairing pxy = k.normalized_pairing(x, y);
  const NormalizedPairing pyz = k.normalized_pairing(y, z);
  const NormalizedPairing pzx = k.normalized_pairing(z, x);

  ShapeData d;
  const auto dsq = [](const NormalizedPairing& p) {
    return p.one_minus_magnitude * (2.0 - p.one_minus_magnitude);
  };
  d.delta_xy_sq = dsq(pxy);
  d.delta_zy_sq = dsq(pyz);
  d.delta_xz_sq = dsq(pzx);
  if (d.delta_xy_sq <= 0.0 || d.delta_zy_sq <= 0.0 || d.delta_xz_sq <= 0.0)
    throw DegenerateError(
        "shape invariant: degenerate triple (two points at delta 0)");

  // <k^_a, k^_b> = conj(pairing(a,b).value); multiply in a canonical order so
  // cyclic rotations of (x, y, z) produce bit-identical results
  std::array<Complex, 3> vals = {std::conj(pxy.value), std::conj(pyz.value),
                                 std::conj(pzx.value)};
  std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  d.triple_product = vals[0] * vals[1] * vals[2];
  d.upsilon = d.triple_product.real();

  const double bound =
      std::abs(pxy.value) * std::abs(pyz.value) * std::abs(pzx.value);
  if (std::abs(d.upsilon) > bound + 1e-14)
    throw InconsistencyError("shape invariant exceeded its cosine bound");

  d.delta_j_sq = (d.delta_xy_sq + d.delta_xz_sq + d.delta_zy_sq - 2.0 +
                  2.0 * d.upsilon) /
                 (d.delta_xy_sq * d.delta_xz_sq);

  const Subspace j = Subspace::vanish_on(k, {{x}, {1}});
  const double dj = delta_sub(j, SubspacePart::j, y, z);
  d.delta_j_sq_gram = dj * dj;
  if (std::abs(d.delta_j_sq - d.delta_j_sq_gram) > 1e-10)
    throw InconsistencyError(
        "shape invariant: derivation-line formula and Gram projection "
        "disagree");
  return d;
}

MonotonicityReport monotonicity_report(
    const Kernel& k, const Subspace& s,
    std::span<const std::pair<Point, Point>> pairs) {
  MonotonicityReport rep;
  const bool np_claim = k.complete_np();
  const auto alpha = dhb_alpha(k);
  const bool bergman_claim = !np_claim && alpha.has_value() &&
                             *alpha >= 1.0 && *alpha <= 2.0 &&
                             s.is_vanish_on();
  if (!np_claim && !bergman_claim)
    throw UnsupportedError(
        "monotonicity: no proven claim for this family/subspace combination");
  rep.claim = np_claim ? "delta_J >= delta_H >= delta_Jperp"
                       : "delta_J <= delta_H";

  rep.all_ok = true;
  for (const auto& [x, y] : pairs) {
    MonotonicityReport::Row row;
    row.x = x;
    row.y = y;
    row.delta_h = delta(k, x, y);
    row.delta_j = delta_sub(s, SubspacePart::j, x, y);
    try {
      row.delta_jperp = delta_sub(s, SubspacePart::jperp, x, y);
      row.jperp_defined = true;
    } catch (const UndefinedValue&) {
      row.jperp_defined = false;
    }
    constexpr double slack = 1e-12;
    if (np_claim) {
      row.ok = row.delta_j >= row.delta_h - slack &&
               (!row.jperp_defined || row.delta_h >= row.delta_jperp - slack);
    } else {
      row.ok = row.delta_j <= row.delta_h + slack;
    }
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

TSeriesCheck t_series_check(double t) {
  if (!(t > 0.0 && t < 1.0))
    throw DomainError("t-series: t must be in (0, 1)");
  TSeriesCheck c;
  const double t2 = t * t;
  c.lhs = std::pow((1.0 - 2.0 * t2) / (1.0 + 2.0 * t2), 2.0);
  c.rhs = std::pow((1.0 - t2) / (1.0 + t2), 4.0);
  c.difference = c.lhs - c.rhs;
  c.delta_jperp = std::sqrt(std::max(0.0, 1.0 - c.lhs));
  c.delta_h = std::sqrt(std::max(0.0, 1.0 - c.rhs));
  return c;
}

TSeriesCoefficients t_series_coefficients() {
  const auto lhs = [](double t) { return t_series_check(t).lhs; };
  const auto rhs = [](double t) { return t_series_check(t).rhs; };
  const auto c6_at = [](const std::function<double(double)>& f, double t) {
    const double t2 = t * t;
    return (f(t) - 1.0 + 8.0 * t2 - 32.0 * t2 * t2) / (t2 * t2 * t2);
  };
  TSeriesCoefficients out;
  const double ta = 0.05, tb = 0.025;
  out.lhs_c6 = (4.0 * c6_at(lhs, tb) - c6_at(lhs, ta)) / 3.0;
  out.rhs_c6 = (4.0 * c6_at(rhs, tb) - c6_at(rhs, ta)) / 3.0;
  const auto c8_at = [&](const std::function<double(double)>& f, double c6,
                         double t) {
    const double t2 = t * t;
    return (f(t) - 1.0 + 8.0 * t2 - 32.0 * t2 * t2 - c6 * t2 * t2 * t2) /
           (t2 * t2 * t2 * t2);
  };
  out.lhs_c8_sample = c8_at(lhs, out.lhs_c6, ta);
  out.rhs_c8_sample = c8_at(rhs, out.rhs_c6, ta);
  return out;
}

std::optional<double> dhb_alpha(const Kernel& k) {
  return k.node().dhb_alpha_param();
}

}  // namespace rkhs
