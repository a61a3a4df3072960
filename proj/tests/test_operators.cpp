#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "rkhs/metrics.hpp"
#include "rkhs/operators.hpp"
#include "rkhs_cli/sampling.hpp"

using namespace rkhs;
using cli::Rng;

TEST_CASE("projections: idempotence, Berezin at own point, action on kernels") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(0.0), Point(0.5)});
  const SpanOperator p0 = projection(basis, 0);

  CHECK(berezin(p0, Point(0.0)).real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p0.self_adjoint());

  const SpanOperator p00 = p0.compose(p0);
  CHECK((p00.coeffs - p0.coeffs).cwiseAbs().maxCoeff() <= 1e-13);

  // P_0 k_{0.5} = <k_{0.5}, k^_0> k^_0 = 1 * k_0 (K(0,0.5) = 1, K(0,0) = 1)
  const Eigen::VectorXcd c = p0.apply_to_kernel(Point(0.5));
  CHECK(std::abs(c(0) - Complex(1.0)) <= 1e-14);
  CHECK(std::abs(c(1)) <= 1e-14);

  // zero kernel function: projection and Berezin transform undefined
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = 1.0;
  const Kernel cust = Kernel::custom({Point(0.0), Point(1.0)}, m);
  auto cb = SpanBasis::build(cust, {Point(0.0), Point(1.0)});
  CHECK_THROWS_AS((void)projection(cb, 1), UndefinedValue);
  CHECK_THROWS_AS((void)projection(cb, 7), ValidationError);
  CHECK_THROWS_AS((void)berezin(projection(cb, 0), Point(1.0)),
                  UndefinedValue);
}

TEST_CASE("schatten norms of projection gaps") {
  const Kernel h = Kernel::dhb(1.0);
  const Point x(0.0), y(0.6);
  const double d = delta(h, x, y);
  CHECK(d == doctest::Approx(0.6).epsilon(1e-14));
  auto basis = SpanBasis::build(h, {x, y});
  const SpanOperator gap = projection(basis, 0).sub(projection(basis, 1));

  CHECK(schatten_norm(gap, INFINITY) == doctest::Approx(d).epsilon(1e-12));
  CHECK(schatten_norm(gap, 1.0) == doctest::Approx(2 * d).epsilon(1e-12));
  CHECK(schatten_norm(gap, 2.0) ==
        doctest::Approx(std::sqrt(2.0) * d).epsilon(1e-12));
  // 2^{-1/p} scaling from the +-delta eigenvalue pair
  CHECK(std::pow(2.0, -1.0 / 3.0) * schatten_norm(gap, 3.0) ==
        doctest::Approx(d).epsilon(1e-12));

  // trace of a rank-one projection is 1; the gap is traceless
  CHECK(operator_trace(projection(basis, 0)).real() ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(operator_trace(gap)) <= 1e-13);

  CHECK_THROWS_AS((void)schatten_norm(gap, 0.5), ValidationError);
}

TEST_CASE("commutator norm identity") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(0.0), Point(0.5)});
  const double d = delta(h, Point(0.0), Point(0.5));
  CHECK(d == doctest::Approx(0.5).epsilon(1e-14));
  const double expect = std::sqrt(d * d * (1 - d * d));  // 0.4330127...
  CHECK(commutator_norm(basis, 0, 1) ==
        doctest::Approx(expect).epsilon(1e-11));
  CHECK(expect == doctest::Approx(std::sqrt(0.1875)).epsilon(1e-15));
  CHECK(commutator_norm(basis, 1, 1) == 0.0);

  // independent eigenvalue oracle on the orthonormalized matrix
  const SpanOperator pa = projection(basis, 0), pb = projection(basis, 1);
  const SpanOperator comm = pa.compose(pb).sub(pb.compose(pa));
  const Eigen::MatrixXcd m = comm.orthonormal_matrix();
  const Eigen::MatrixXcd mm = m.adjoint() * m;
  const auto [lo, hi] = oracle::eig2(mm(0, 0).real(), mm(0, 1), mm(1, 1).real());
  CHECK(std::sqrt(hi) == doctest::Approx(expect).epsilon(1e-11));

  // direct-sum cross pair: delta = 1, commutator vanishes
  const Kernel ds = Kernel::direct_sum(h, h);
  auto dsb =
      SpanBasis::build(ds, {Point(0.1), Point::on_side(1, Point(0.2))});
  CHECK(commutator_norm(dsb, 0, 1) <= 1e-12);
}

TEST_CASE("berezin transform") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(0.0)});
  const SpanOperator pa = projection(basis, 0);
  const double d = delta(h, Point(0.0), Point(0.6));
  CHECK(berezin(pa, Point(0.6)).real() ==
        doctest::Approx(1.0 - d * d).epsilon(1e-13));
  CHECK(berezin(pa, Point(0.6)).real() == doctest::Approx(0.64).epsilon(1e-13));

  // widehat{M N*}(x) = m(x) conj(n(x)) for multiplier symbols; with
  // m = n = z on the Hardy space at x = 0.5 the value is 0.25
  auto b2 = SpanBasis::build(h, {Point(0.0), Point(0.5)});
  const std::vector<Complex> symbol = {0.0, 0.5};  // m(z) = z at the basis
  const SpanOperator mstar = multiplier_adjoint_action(b2, symbol);
  const Eigen::VectorXcd cm = mstar.apply_to_kernel(Point(0.5));
  const Eigen::VectorXcd cn = cm;  // n = m
  // <N* k_x, M* k_x> / K(x,x) via the Gram
  const Complex num = (cm.adjoint() * b2->gram * cn)(0);
  CHECK(num.real() / h.eval(Point(0.5), Point(0.5)).real() ==
        doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("multiplier adjoint action") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(0.2), Point(0.5), Point(-0.3)});

  // m = 1 acts as the identity on the span
  const std::vector<Complex> ones = {1.0, 1.0, 1.0};
  const SpanOperator id = multiplier_adjoint_action(basis, ones);
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXcd c = id.apply_to_kernel(basis->points[j]);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(c(i) - (i == j ? 1.0 : 0.0)) <= 1e-10);
  }

  // m(z) = z: k_{x_j} -> conj(x_j) k_{x_j}
  const std::vector<Complex> zsym = {0.2, 0.5, -0.3};
  const SpanOperator mz = multiplier_adjoint_action(basis, zsym);
  const Eigen::VectorXcd c1 = mz.apply_to_kernel(basis->points[1]);
  CHECK(std::abs(c1(1) - std::conj(Complex(0.5))) <= 1e-10);
  CHECK(std::abs(c1(0)) <= 1e-10);

  const std::vector<Complex> wrong_size = {1.0};
  CHECK_THROWS_AS((void)multiplier_adjoint_action(basis, wrong_size),
                  ValidationError);
}

TEST_CASE("extremal functions") {
  const Kernel h = Kernel::dhb(1.0);
  const ExtremalFunction f = extremal_function(h, Point(0.0), Point(0.6));
  CHECK(f.value_at_w == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(std::abs(f.fn(Point(0.0))) <= 1e-12);          // constraint F(z) = 0
  CHECK(f.fn(Point(0.6)).real() ==
        doctest::Approx(f.value_at_w).epsilon(1e-12));  // attained, real

  // unit Gram norm of F over span{k_z, k_w}
  {
    Eigen::Matrix2cd g;
    g << h.eval(0.0, 0.0), h.eval(0.0, 0.6), h.eval(0.6, 0.0),
        h.eval(0.6, 0.6);
    // recover the coefficients from evaluations at z and w
    Eigen::Matrix2cd e;
    e << h.eval(0.0, 0.0), h.eval(0.0, 0.6), h.eval(0.6, 0.0),
        h.eval(0.6, 0.6);
    Eigen::Vector2cd vals;
    vals << f.fn(Point(0.0)), f.fn(Point(0.6));
    const Eigen::Vector2cd coef = e.colPivHouseholderQr().solve(vals);
    CHECK(std::abs((coef.adjoint() * g * coef)(0).real() - 1.0) <= 1e-12);
  }

  // brute-force oracle over the constrained 2-span
  CHECK(f.value_at_w ==
        doctest::Approx(oracle::extremal_value(h, Point(0.0), Point(0.6)))
            .epsilon(1e-8));
  // sup-ratio reading: the constrained sup divided by ||k_w|| is delta
  CHECK(f.value_at_w / h.norm_at(Point(0.6)) ==
        doctest::Approx(delta(h, Point(0.0), Point(0.6))).epsilon(1e-12));

  const Kernel fk = Kernel::fock(1.0);
  const ExtremalFunction g = extremal_function(fk, Point(0.0), Point(1.0));
  CHECK(g.value_at_w ==
        doctest::Approx(std::sqrt(std::numbers::e - 1.0)).epsilon(1e-13));
  CHECK(g.value_at_w ==
        doctest::Approx(oracle::extremal_value(fk, Point(0.0), Point(1.0)))
            .epsilon(1e-8));

  // indistinguishable points degenerate the problem
  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(2, 2);
  const Kernel flat = Kernel::custom({Point(0.0), Point(1.0)}, ones);
  CHECK_THROWS_AS((void)extremal_function(flat, Point(0.0), Point(1.0)),
                  DegenerateError);
}

TEST_CASE("max point value over the span equals the kernel norm") {
  // sup of Re f(y) over the unit ball of span{k_{x_i}} when y is a basis
  // point: sqrt(v_y^H G^{-1} v_y) = ||k_y||
  const Kernel h = Kernel::dhb(2.0);
  auto basis = SpanBasis::build(h, {Point(0.1), Point(0.4), Point(-0.2)});
  for (int j = 0; j < 3; ++j) {
    const Point& y = basis->points[j];
    Eigen::VectorXcd vy(3);
    for (int i = 0; i < 3; ++i) vy(i) = h.eval(basis->points[i], y);
    const double sup = std::sqrt(vy.dot(basis->solve(vy)).real());
    CHECK(sup == doctest::Approx(h.norm_at(y)).epsilon(1e-10));
  }
}

TEST_CASE("hankel form gaps") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(0.0), Point(0.6)});
  const HankelGap g = hankel_gap_norm(basis, 0, 1);
  const double d = delta(h, Point(0.0), Point(0.6));
  CHECK(g.norm == doctest::Approx(d).epsilon(1e-11));
  CHECK(g.trace_norm == doctest::Approx(2 * d).epsilon(1e-11));
  CHECK(hankel_gap_norm(basis, 1, 1).norm == 0.0);

  const Kernel ds = Kernel::direct_sum(h, h);
  auto dsb =
      SpanBasis::build(ds, {Point(0.1), Point::on_side(1, Point(0.2))});
  CHECK(hankel_gap_norm(dsb, 0, 1).norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("berezin lipschitz bound and variation along curves") {
  Rng rng(41);
  const Kernel h = Kernel::dhb(1.0);

  for (int trial = 0; trial < 25; ++trial) {
    const int m = 1 + int(trial % 3);
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < m) {
      Point p(rng.disk(0.7));
      bool dup = false;
      for (auto& q : pts) dup = dup || q == p;
      if (!dup) pts.push_back(p);
    }
    auto basis = SpanBasis::build(h, pts);
    Eigen::MatrixXcd a(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        a(r, c) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const SpanOperator op{basis, (a + a.adjoint()) / 2.0};
    const Point x(rng.disk(0.8)), y(rng.disk(0.8));
    const double lhs = std::abs(berezin(op, x) - berezin(op, y));
    CHECK(lhs <= 2.0 * schatten_norm(op, INFINITY) * delta(h, x, y) + 1e-10);
  }

  // A = P_0 along the radial curve [0, 0.9]: 1 - r^2 decreases monotonically,
  // so the total variation is the total drop delta^2(0, 0.9) = 0.81
  auto b0 = SpanBasis::build(h, {Point(0.0)});
  const SpanOperator p0 = projection(b0, 0);
  const VariationResult v =
      variation_along_curve(p0, Curve::radial(0.0, 0.9), 1e-8);
  CHECK(v.value == doctest::Approx(0.81).epsilon(1e-6));
  CHECK(v.within_bound);

  Curve constant;
  constant.at = [](double) { return Point(0.4); };
  CHECK(variation_along_curve(p0, constant).value == 0.0);

  // sharpness: A = P_x - P_y has |A^(x) - A^(y)| = 2 delta^2 = 2 ||A|| delta
  const Point x(0.0), y(0.6);
  auto b2 = SpanBasis::build(h, {x, y});
  const SpanOperator gap = projection(b2, 0).sub(projection(b2, 1));
  const double lhs = std::abs(berezin(gap, x) - berezin(gap, y));
  CHECK(lhs == doctest::Approx(0.72).epsilon(1e-12));
  CHECK(lhs == doctest::Approx(2.0 * schatten_norm(gap, INFINITY) *
                               delta(h, x, y))
                   .epsilon(1e-12));
}

TEST_CASE("span basis jitter policy") {
  const Kernel h = Kernel::dhb(1.0);
  // nearly coincident points make the Gram numerically singular
  auto basis = SpanBasis::build(h, {Point(0.3), Point(0.3 + 1e-9)});
  CHECK(basis->jittered);
  CHECK(basis->jitter > 0.0);
  CHECK(basis->condition > 0.0);
  // factorization still serves operator norms at the right scale
  const SpanOperator p = projection(basis, 0);
  CHECK(schatten_norm(p, INFINITY) <= 1.0 + 1e-6);
}

TEST_CASE("span operator JSON round-trip") {
  const Kernel h = Kernel::dhb(1.0);
  auto basis = SpanBasis::build(h, {Point(Complex(0.1, 0.2)), Point(0.5)});
  Eigen::MatrixXcd c(2, 2);
  c << Complex(1, 0.5), Complex(0, -1), Complex(2, 0), Complex(0.25, 0.125);
  const SpanOperator op{basis, c};
  const std::string j1 = span_operator_to_json(op);
  const SpanOperator back = span_operator_from_json(j1);
  CHECK(span_operator_to_json(back) == j1);  // byte-identical re-render
  CHECK((back.coeffs - op.coeffs).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(berezin(back, Point(0.3)) - berezin(op, Point(0.3))) <=
        1e-15);
}
