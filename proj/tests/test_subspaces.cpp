#include <doctest.h>

#include "oracles.hpp"
#include "rkhs/metrics.hpp"
#include "rkhs/subspaces.hpp"
#include "rkhs_cli/sampling.hpp"

using namespace rkhs;
using cli::Rng;

TEST_CASE("subspace kernel split") {
  const Kernel h1 = Kernel::dhb(1.0);
  const Subspace s = Subspace::vanish_on(h1, {{Point(0.0)}, {}});
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    const Point x(rng.disk(0.85)), y(rng.disk(0.85));
    const auto [kj, kp] = s.kernels(x, y);
    // k_0 = 1 with unit norm, so K_Jperp = 1 and K_J = K - 1
    CHECK(std::abs(kp - Complex(1.0)) <= 1e-13);
    CHECK(std::abs(kj - (h1.eval(x, y) - 1.0)) <= 1e-13);
    CHECK(std::abs(kj + kp - h1.eval(x, y)) <=
          1e-15 * std::abs(h1.eval(x, y)));
  }

  // membership constraint: K_J(s, y) = 0 for s in S
  const Subspace s2 =
      Subspace::vanish_on(h1, {{Point(Complex(0.2, 0.1))}, {}});
  for (int i = 0; i < 10; ++i) {
    const Point y(rng.disk(0.8));
    const auto [kj, kp] = s2.kernels(Point(Complex(0.2, 0.1)), y);
    CHECK(std::abs(kj) <= 1e-12);
  }

  // dhb(2) vanishing at 0: K_J = (1 - conj(y) x)^-2 - 1
  const Kernel h2 = Kernel::dhb(2.0);
  const Subspace s3 = Subspace::vanish_on(h2, {{Point(0.0)}, {}});
  const auto [kj3, kp3] = s3.kernels(Point(0.5), Point(-0.5));
  CHECK(std::abs(kj3 - (std::pow(1.25, -2.0) - 1.0)) <= 1e-13);

  // PSD of both parts on sampled sets
  for (const Subspace* sub : {&s, &s3}) {
    std::vector<Point> pts;
    while (pts.size() < 5) {
      Point p(rng.disk(0.8));
      if (std::abs(p.z()) > 0.1) pts.push_back(p);
    }
    Eigen::MatrixXcd mj(5, 5), mp(5, 5);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) {
        const auto [kj, kp] = sub->kernels(pts[a], pts[b]);
        mj(a, b) = kj;
        mp(a, b) = kp;
      }
    CHECK(oracle::min_eig_hermitian(mj) >=
          -1e-10 * std::max(mj.trace().real(), 1.0));
    CHECK(oracle::min_eig_hermitian(mp) >=
          -1e-10 * std::max(mp.trace().real(), 1.0));
  }

  CHECK_THROWS_AS(Subspace::vanish_on(h1, {{Point(0.1), Point(0.1)}, {}}),
                  ValidationError);
  CHECK_THROWS_AS(Subspace::vanish_on(h1, {{Point(0.1)}, {3}}),
                  ValidationError);
  CHECK_THROWS_AS(Subspace::vanish_on(h1, {{}, {}}), ValidationError);
}

TEST_CASE("order-2 vanishing via derivative functionals") {
  // J = {f in Bergman: f(0) = f'(0) = 0} has K_Jperp = 1 + 2 x conj(y)
  const Kernel h2 = Kernel::dhb(2.0);
  const Subspace s = Subspace::vanish_on(h2, {{Point(0.0)}, {2}});
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const Point x(rng.disk(0.8)), y(rng.disk(0.8));
    const auto [kj, kp] = s.kernels(x, y);
    const Complex expect = 1.0 + 2.0 * x.z() * std::conj(y.z());
    CHECK(std::abs(kp - expect) <= 1e-12);
  }

  // delta_Jperp(t, -t) > delta_H(t, -t) for small t, reversed near 1
  const auto cmp = [&](double t) {
    return delta_sub(s, SubspacePart::jperp, Point(t), Point(-t)) -
           delta(h2, Point(t), Point(-t));
  };
  CHECK(cmp(0.1) > 0.0);
  CHECK(cmp(0.9) < 0.0);

  // order 2 requires analytic derivative data
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  const Kernel cust = Kernel::custom({Point(0.0), Point(1.0)}, m);
  CHECK_THROWS_AS(Subspace::vanish_on(cust, {{Point(0.0)}, {2}}),
                  ValidationError);
}

TEST_CASE("delta on subspaces") {
  const Kernel h1 = Kernel::dhb(1.0);
  const Subspace s = Subspace::vanish_on(h1, {{Point(0.0)}, {}});
  // Theta(z) = z case: delta_J = delta_H wherever defined
  CHECK(delta_sub(s, SubspacePart::j, Point(0.3), Point(0.6)) ==
        doctest::Approx(rho_disk(0.3, 0.6)).epsilon(1e-11));
  CHECK(delta_sub(s, SubspacePart::j, Point(0.3), Point(0.3)) == 0.0);

  const Kernel h2 = Kernel::dhb(2.0);
  const Subspace s2 = Subspace::vanish_on(h2, {{Point(0.0)}, {}});
  const double dj = delta_sub(s2, SubspacePart::j, Point(0.5), Point(-0.5));
  const double dh = delta(h2, Point(0.5), Point(-0.5));
  // frozen from the Gram oracle: delta_J = 0.886433..., delta_H = 0.932952...
  CHECK(dj == doctest::Approx(0.88643288821327159).epsilon(1e-12));
  CHECK(dh == doctest::Approx(0.93295230317524808).epsilon(1e-12));
  CHECK(dj <= dh);

  // querying at the vanishing point leaves delta undefined
  CHECK_THROWS_AS(
      (void)delta_sub(s, SubspacePart::j, Point(0.0), Point(0.3)),
      UndefinedValue);
}

TEST_CASE("hardy inner-function subspaces in closed form") {
  // Theta(z) = z: Jperp is the constants, delta_Jperp = 0
  {
    const auto d = hardy_inner_delta(std::vector<Complex>{0.0}, 0.3, 0.6);
    REQUIRE(d.delta_j.has_value());
    CHECK(*d.delta_j == doctest::Approx(rho_disk(0.3, 0.6)).epsilon(1e-14));
    CHECK(d.delta_jperp <= 1e-7);
    const Subspace s = Subspace::hardy_inner({{0.0}, 1.0});
    CHECK(delta_sub(s, SubspacePart::jperp, Point(0.3), Point(0.6)) <= 1e-6);
  }

  // Theta(z) = z^2 at (t, -t): the equality case delta_Jperp = rho = delta_H
  {
    const double t = 0.35;
    const auto d =
        hardy_inner_delta(std::vector<Complex>{0.0, 0.0}, t, -t);
    CHECK(d.delta_jperp == doctest::Approx(rho_disk(t, -t)).epsilon(1e-12));
  }

  // Theta vanishing at a query point leaves delta_J undefined
  {
    const auto d = hardy_inner_delta(std::vector<Complex>{0.3}, 0.3, 0.6);
    CHECK(!d.delta_j.has_value());
    const Subspace s = Subspace::hardy_inner({{0.3}, 1.0});
    CHECK_THROWS_AS(
        (void)delta_sub(s, SubspacePart::j, Point(0.3), Point(0.6)),
        UndefinedValue);
  }

  // closed form against the Gram projection across random instances,
  // delta_Jperp <= rho throughout
  Rng rng(7);
  const Kernel h1 = Kernel::dhb(1.0);
  int done = 0;
  double worst = 0.0;
  while (done < 200) {
    const int nz = 2 + int(rng.uniform() * 2);  // 2 or 3 zeros
    std::vector<Complex> zeros;
    for (int i = 0; i < nz; ++i) zeros.push_back(rng.disk(0.6));
    const Complex x = rng.disk(0.6), y = rng.disk(0.6);
    bool ok = std::abs(x - y) > 0.15;
    for (Complex a : zeros)
      ok = ok && std::abs(x - a) > 0.15 && std::abs(y - a) > 0.15;
    for (int i = 0; i < nz; ++i)
      for (int j = i + 1; j < nz; ++j)
        ok = ok && std::abs(zeros[i] - zeros[j]) > 0.1;
    if (!ok) continue;
    ++done;

    const auto closed = hardy_inner_delta(zeros, x, y);
    std::vector<Point> vpts;
    for (Complex a : zeros) vpts.emplace_back(a);
    const Subspace vs = Subspace::vanish_on(h1, {vpts, {}});
    const double gram_jperp =
        delta_sub(vs, SubspacePart::jperp, Point(x), Point(y));
    worst = std::max(worst, std::abs(closed.delta_jperp - gram_jperp));
    REQUIRE(closed.delta_j.has_value());
    worst = std::max(
        worst, std::abs(*closed.delta_j -
                        delta_sub(vs, SubspacePart::j, Point(x), Point(y))));
    CHECK(closed.delta_jperp <= rho_disk(x, y) + 1e-12);
  }
  CHECK(worst <= 1e-10);

  CHECK_THROWS_AS((void)hardy_inner_delta(std::vector<Complex>{1.1}, 0.0, 0.3),
                  ValidationError);
  CHECK_THROWS_AS(Subspace::hardy_inner({{}, 1.0}), ValidationError);
  CHECK_THROWS_AS(Subspace::hardy_inner({{0.3}, 2.0}), ValidationError);
}

TEST_CASE("shape invariant") {
  const Kernel h1 = Kernel::dhb(1.0);
  const ShapeData d =
      shape_invariant(h1, Point(0.0), Point(0.3), Point(0.6));
  // triple product of real pairings: sqrt(0.91) * (0.8 sqrt(0.91)/0.82) * 0.8
  CHECK(d.upsilon == doctest::Approx(0.5824 / 0.82).epsilon(1e-13));
  CHECK(std::abs(d.triple_product.imag()) <= 1e-15);
  CHECK(std::abs(d.upsilon) <= std::abs(d.triple_product) + 1e-14);

  // collinear real points in a real-kernel family: all pairings real
  // positive, so Upsilon is the product of the cosines
  const double prod_cos = std::abs(d.triple_product);
  CHECK(d.upsilon == doctest::Approx(prod_cos).epsilon(1e-14));

  // random complex triples: formula vs Gram at 1e-10 is asserted inside
  Rng rng(11);
  std::vector<Kernel> fams = {Kernel::dhb(1.0), Kernel::dhb(2.0),
                              Kernel::fock(1.0)};
  for (const Kernel& k : fams) {
    const bool plane = k.domain().kind == Domain::Kind::plane;
    int done = 0;
    while (done < 60) {
      const Complex x = plane ? rng.box(1.0) : rng.disk(0.7);
      const Complex y = plane ? rng.box(1.0) : rng.disk(0.7);
      const Complex z = plane ? rng.box(1.0) : rng.disk(0.7);
      if (std::abs(x - y) < 0.15 || std::abs(y - z) < 0.15 ||
          std::abs(x - z) < 0.15)
        continue;
      ++done;
      const ShapeData sd = shape_invariant(k, Point(x), Point(y), Point(z));
      CHECK(std::abs(sd.delta_j_sq - sd.delta_j_sq_gram) <= 1e-10);
      // cyclic invariance, exactly as computed
      const ShapeData sd2 = shape_invariant(k, Point(y), Point(z), Point(x));
      const ShapeData sd3 = shape_invariant(k, Point(z), Point(x), Point(y));
      CHECK(sd.upsilon == sd2.upsilon);
      CHECK(sd.upsilon == sd3.upsilon);
    }
  }

  CHECK_THROWS_AS(
      (void)shape_invariant(h1, Point(0.1), Point(0.1), Point(0.4)),
      ValidationError);
  // distinct points with delta = 0 (rank-one kernel): degenerate triple
  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(3, 3);
  const Kernel flat =
      Kernel::custom({Point(0.0), Point(1.0), Point(2.0)}, ones);
  CHECK_THROWS_AS(
      (void)shape_invariant(flat, Point(0.0), Point(1.0), Point(2.0)),
      DegenerateError);
}

TEST_CASE("monotonicity reports") {
  Rng rng(13);
  const Kernel h1 = Kernel::dhb(1.0);
  const Subspace s = Subspace::vanish_on(h1, {{Point(0.5)}, {}});
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < 50) {
    const Complex x = rng.disk(0.7), y = rng.disk(0.7);
    if (std::abs(x - 0.5) < 0.1 || std::abs(y - 0.5) < 0.1 ||
        std::abs(x - y) < 0.05)
      continue;
    pairs.emplace_back(Point(x), Point(y));
  }
  const MonotonicityReport rep = monotonicity_report(h1, s, pairs);
  CHECK(rep.claim == "delta_J >= delta_H >= delta_Jperp");
  CHECK(rep.all_ok);

  // Bergman-scale reverse inequality at the pair (t, -t)
  const Kernel h2 = Kernel::dhb(2.0);
  const Subspace s2 = Subspace::vanish_on(h2, {{Point(0.0)}, {}});
  const std::vector<std::pair<Point, Point>> tp = {
      {Point(0.1), Point(-0.1)}};
  const MonotonicityReport rep2 = monotonicity_report(h2, s2, tp);
  CHECK(rep2.claim == "delta_J <= delta_H");
  CHECK(rep2.all_ok);

  // no proven claim: refuse rather than silently check
  const Kernel f = Kernel::fock(1.0);
  const Subspace sf = Subspace::vanish_on(f, {{Point(0.0)}, {}});
  CHECK_THROWS_AS((void)monotonicity_report(f, sf, tp), UnsupportedError);
  const Kernel h3 = Kernel::dhb(3.0);
  const Subspace s3 = Subspace::vanish_on(h3, {{Point(0.0)}, {}});
  CHECK_THROWS_AS((void)monotonicity_report(h3, s3, tp), UnsupportedError);
}

TEST_CASE("t-series comparison") {
  const TSeriesCheck c1 = t_series_check(0.1);
  CHECK(c1.lhs < c1.rhs);
  CHECK(c1.delta_jperp > c1.delta_h);

  const TSeriesCheck c9 = t_series_check(0.9);
  CHECK(c9.lhs > c9.rhs);
  CHECK(c9.delta_jperp < c9.delta_h);

  const TSeriesCheck tiny = t_series_check(1e-4);
  CHECK(tiny.lhs == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(tiny.rhs == doctest::Approx(1.0).epsilon(1e-7));

  CHECK_THROWS_AS((void)t_series_check(0.0), DomainError);
  CHECK_THROWS_AS((void)t_series_check(1.0), DomainError);

  const TSeriesCoefficients co = t_series_coefficients();
  CHECK(std::abs(co.lhs_c6 + 96.0) <= 0.02 * 96.0);
  CHECK(std::abs(co.rhs_c6 + 88.0) <= 0.02 * 88.0);
  // (side - series through t^6)/t^8 stays bounded
  CHECK(std::abs(co.lhs_c8_sample) < 400.0);
  CHECK(std::abs(co.rhs_c8_sample) < 400.0);
}
