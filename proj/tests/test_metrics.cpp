#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "rkhs/bs_metric.hpp"
#include "rkhs/curve.hpp"
#include "rkhs/inner_distance.hpp"
#include "rkhs/metrics.hpp"
#include "rkhs_cli/sampling.hpp"

using namespace rkhs;
using cli::Rng;

TEST_CASE("delta examples") {
  const Kernel h1 = Kernel::dhb(1.0);
  CHECK(delta(h1, Point(0.5), Point(-0.5)) ==
        doctest::Approx(0.8).epsilon(1e-14));
  CHECK(delta(h1, Point(Complex(0.3, 0.2)), Point(Complex(0.3, 0.2))) == 0.0);

  const Kernel h2 = Kernel::dhb(2.0);
  const double expect = std::sqrt(1.0 - 0.75 * 0.75);  // 0.661437...
  CHECK(delta(h2, Point(0.0), Point(0.5)) ==
        doctest::Approx(expect).epsilon(1e-14));
  // product-kernel route as the oracle
  const Kernel prod = Kernel::product(h1, h1);
  CHECK(delta(h2, Point(0.0), Point(0.5)) ==
        doctest::Approx(oracle::delta(prod, Point(0.0), Point(0.5)))
            .epsilon(1e-13));
}

TEST_CASE("delta_hat and delta_check examples") {
  const Kernel h1 = Kernel::dhb(1.0);
  CHECK(delta_hat(h1, Point(0.0), Point(0.6)) ==
        doctest::Approx(std::sqrt(2.0) * std::sqrt(0.2)).epsilon(1e-14));
  CHECK(delta_hat(h1, Point(0.2), Point(0.2)) == 0.0);
  CHECK(delta_check(h1, Point(0.2), Point(0.2)) == 0.0);
  CHECK(delta_check(h1, Point(0.0), Point(0.6)) ==
        doctest::Approx(std::acos(0.8)).epsilon(1e-14));

  const Kernel ds = Kernel::direct_sum(h1, h1);
  const Point a(0.1), b = Point::on_side(1, Point(0.2));
  CHECK(delta(ds, a, b) == 1.0);
  CHECK(delta_hat(ds, a, b) == doctest::Approx(std::sqrt(2.0)));
  CHECK(delta_check(ds, a, b) ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
}

TEST_CASE("rho and beta on the disk") {
  CHECK(rho_disk(0.0, 0.37) == doctest::Approx(0.37).epsilon(1e-16));
  CHECK(beta_disk(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(rho_disk(0.3, 0.6) == doctest::Approx(0.3 / 0.82).epsilon(1e-15));
  CHECK_THROWS_AS((void)rho_disk(1.1, 0.0), DomainError);
  CHECK_THROWS_AS((void)beta_disk(0.0, Complex(0.8, 0.7)), DomainError);
}

TEST_CASE("rho on the ball") {
  CHECK(rho_ball(Point({Complex(0), Complex(0)}),
                 Point({Complex(0.3), Complex(0.4)})) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho_ball(Point(0.3), Point(0.6)) ==
        doctest::Approx(rho_disk(0.3, 0.6)).epsilon(1e-14));

  // delta on Drury-Arveson equals rho_ball
  const Kernel da2 = Kernel::drury_arveson(2);
  const Point z({Complex(0.1), Complex(0.0)});
  const Point w({Complex(0.0), Complex(0.2)});
  CHECK(delta(da2, z, w) == doctest::Approx(rho_ball(z, w)).epsilon(1e-13));
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Point a = rng.ball(2, 0.9), b = rng.ball(2, 0.9);
    CHECK(std::abs(delta(da2, a, b) - rho_ball(a, b)) <= 1e-12);
  }
  CHECK_THROWS_AS((void)rho_ball(Point({Complex(1.2), Complex(0)}),
                                 Point({Complex(0), Complex(0)})),
                  DomainError);
}

TEST_CASE("metric axioms: symmetry, positivity, triangle inequality") {
  Rng rng(13);
  std::vector<Kernel> fams = {Kernel::dhb(0.0), Kernel::dhb(1.0),
                              Kernel::dhb(2.0), Kernel::fock(1.0)};
  for (const Kernel& k : fams) {
    const bool plane = k.domain().kind == Domain::Kind::plane;
    for (int i = 0; i < 500; ++i) {
      const Point a = plane ? Point(rng.box(1.2)) : Point(rng.disk(0.9));
      const Point b = plane ? Point(rng.box(1.2)) : Point(rng.disk(0.9));
      const Point c = plane ? Point(rng.box(1.2)) : Point(rng.disk(0.9));
      const double dab = delta(k, a, b);
      CHECK(delta(k, b, a) == dab);  // exact symmetry
      CHECK(dab >= 0.0);
      CHECK(dab <= delta(k, a, c) + delta(k, c, b) + 1e-12);
    }
  }
}

TEST_CASE("the magic identity: delta on dhb(1) is rho") {
  Rng rng(19);
  const Kernel h = Kernel::dhb(1.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Complex z = rng.disk(0.95), w = rng.disk(0.95);
    worst = std::max(worst,
                     std::abs(delta(h, Point(z), Point(w)) - rho_disk(z, w)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("third-order agreement of the three pairing metrics") {
  Rng rng(23);
  const Kernel h = Kernel::dhb(1.0);
  double level_max[3] = {0, 0, 0};
  const double eps[3] = {1e-1, 1e-2, 1e-3};
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 50; ++i) {
      auto [a, b] = oracle::rho_pair(rng.disk(0.6), eps[l],
                                     rng.uniform(0, 2 * std::numbers::pi));
      const DeltaTriple t = delta_triple(h, Point(a), Point(b));
      const double spread = std::max({t.delta, t.delta_hat, t.delta_check}) -
                            std::min({t.delta, t.delta_hat, t.delta_check});
      level_max[l] = std::max(level_max[l], spread);
    }
  // max pairwise difference behaves like eps^3/6
  for (int l = 0; l < 3; ++l) {
    CHECK(level_max[l] <= 0.35 * std::pow(eps[l], 3.0));
    CHECK(level_max[l] >= 0.05 * std::pow(eps[l], 3.0));
  }
}

TEST_CASE("curve length by dyadic refinement") {
  const DistanceFn rho = [](const Point& a, const Point& b) {
    return rho_disk(a.z(), b.z());
  };
  const LengthResult lr = curve_length(rho, Curve::radial(0.0, 0.5), 1e-8);
  CHECK(lr.converged);
  CHECK(lr.value == doctest::Approx(std::atanh(0.5)).epsilon(1e-7));

  // constant curve
  Curve constant;
  constant.at = [](double) { return Point(0.3); };
  CHECK(curve_length(rho, constant, 1e-8).value == 0.0);

  // l_delta for dhb(2) along [0, 0.5]: local expansion delta ~ sqrt(2) rho
  const Kernel h2 = Kernel::dhb(2.0);
  const DistanceFn d2 = [&](const Point& a, const Point& b) {
    return delta(h2, a, b);
  };
  const LengthResult l2 = curve_length(d2, Curve::radial(0.0, 0.5), 1e-8);
  CHECK(l2.converged);
  CHECK(l2.value ==
        doctest::Approx(std::sqrt(2.0) * std::atanh(0.5)).epsilon(1e-6));
}

TEST_CASE("inner distance on a grid graph") {
  // euclidean metric: the straight segment
  const DistanceFn euclid = [](const Point& a, const Point& b) {
    return std::abs(a.z() - b.z());
  };
  const GeodesicResult ge =
      inner_distance(euclid, nullptr, Point(0.0), Point(0.5), 61);
  CHECK(ge.distance == doctest::Approx(0.5).epsilon(1e-6));

  // rho on the disk: radial geodesic has length artanh(1/2) = beta/2
  const Kernel h = Kernel::dhb(1.0);
  const DistanceFn rho = [](const Point& a, const Point& b) {
    return rho_disk(a.z(), b.z());
  };
  const GeodesicResult gr =
      inner_distance(rho, &h, Point(0.0), Point(0.5), 121);
  CHECK(std::abs(gr.distance - std::atanh(0.5)) <= 2e-3);
  CHECK(gr.distance >= gr.direct - 1e-9);

  // delta for dhb(1) shares the geodesic (delta = rho)
  const DistanceFn dl = [&](const Point& a, const Point& b) {
    return delta(h, a, b);
  };
  const GeodesicResult gd = inner_distance(dl, &h, Point(0.0), Point(0.5), 121);
  CHECK(std::abs(gd.distance - std::atanh(0.5)) <= 2e-3);

  CHECK_THROWS_AS(
      (void)inner_distance(euclid, nullptr, Point(0.0), Point(0.5), 8),
      ValidationError);
  CHECK_THROWS_AS(
      (void)inner_distance(euclid, nullptr, Point(0.0), Point(0.5), 500),
      ValidationError);
}

TEST_CASE("inner distances dominate the metrics; strict gap for delta") {
  const Kernel h = Kernel::dhb(1.0);
  const DistanceFn dl = [&](const Point& a, const Point& b) {
    return delta(h, a, b);
  };
  const DistanceFn dh = [&](const Point& a, const Point& b) {
    return delta_hat(h, a, b);
  };
  const GeodesicResult g1 = inner_distance(dl, &h, Point(0.0), Point(0.5), 161);
  CHECK(g1.distance > g1.direct + 0.04);  // sigma* > sigma strictly
  const GeodesicResult g2 = inner_distance(dh, &h, Point(0.0), Point(0.5), 161);
  CHECK(g2.distance > g2.direct + 0.01);
}

TEST_CASE("bs density closed forms and cross-checks") {
  CHECK(bs_density(Kernel::dhb(1.0), Point(0.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(bs_density(Kernel::dhb(2.0), Point(0.0)) ==
        doctest::Approx(2.0).epsilon(1e-10));
  for (double z : {0.0, 0.7, -1.3}) {
    CHECK(bs_density(Kernel::fock(1.7), Point(z)) ==
          doctest::Approx(1.7).epsilon(1e-9));
  }
  // second-order oracle stencil agrees
  const Kernel h2 = Kernel::dhb(2.0);
  const Complex z(0.31, -0.12);
  CHECK(bs_density(h2, Point(z)) ==
        doctest::Approx(oracle::fd_density(h2, z, 1e-4)).epsilon(1e-6));

  // rescaling does not change the density
  const Kernel resc =
      Kernel::rescale(Kernel::dhb(1.0), ScalingFunction::builtin("exp"));
  CHECK(bs_density(resc, Point(0.3)) ==
        doctest::Approx(bs_density(Kernel::dhb(1.0), Point(0.3)))
            .epsilon(1e-8));

  // finite-length example: closed-form density on the real axis
  const Kernel fl = Kernel::finite_length_example();
  for (double r : {0.0, 0.37, 0.9}) {
    const double expect = (3 + r) / (4 * (1 - r) * (1 + r) * (1 + r));
    CHECK(bs_density(fl, Point(r)) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("bs length: hyperbolic radial arc and the finite-length boundary") {
  const LengthResult l1 =
      bs_length(Kernel::dhb(1.0), Curve::radial(0.0, 0.5), 1e-10);
  CHECK(l1.converged);
  CHECK(l1.value == doctest::Approx(std::atanh(0.5)).epsilon(1e-8));

  Curve constant;
  constant.at = [](double) { return Point(0.2); };
  CHECK(bs_length(Kernel::dhb(1.0), constant).value ==
        doctest::Approx(0.0).epsilon(1e-12));

  // the finite-length example has a finite boundary-reaching length; oracle
  // is adaptive Simpson over the closed-form density
  const Kernel fl = Kernel::finite_length_example();
  const double end = 1.0 - 1e-6;
  const LengthResult l2 = bs_length(fl, Curve::radial(0.0, end), 1e-9);
  const double expect = oracle::simpson(
      [](double r) {
        return std::sqrt((3 + r) / (4 * (1 - r) * (1 + r) * (1 + r)));
      },
      0.0, end, 1e-11);
  CHECK(std::isfinite(l2.value));
  CHECK(l2.value == doctest::Approx(expect).epsilon(1e-6));

  // near the boundary the density approaches 1/(4(1-r)): the announced
  // asymptotic form of the length element
  const double r = 1.0 - 1e-6;
  CHECK(std::sqrt(bs_density(fl, Point(r))) * 2.0 * std::sqrt(1.0 - r) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("length of delta curves is proportional to the bs length") {
  Rng rng(37);
  std::vector<Kernel> fams = {Kernel::dhb(1.0), Kernel::dhb(2.0),
                              Kernel::fock(1.0)};
  for (const Kernel& k : fams) {
    const bool plane = k.domain().kind == Domain::Kind::plane;
    const DistanceFn dl = [&](const Point& a, const Point& b) {
      return delta(k, a, b);
    };
    std::vector<double> ratios;
    for (int i = 0; i < 6; ++i) {
      const Complex c0 = plane ? rng.box(0.8) : rng.disk(0.5);
      const Complex c1 = plane ? rng.box(0.8) : rng.disk(0.5);
      const double amp = rng.uniform(0.02, 0.06);
      const double ph = rng.uniform(0, 2 * std::numbers::pi);
      Curve curve;
      curve.at = [=](double t) {
        const Complex base = (1 - t) * c0 + t * c1;
        return Point(base + amp * std::sin(2 * std::numbers::pi * t + ph));
      };
      curve.initial_samples = 16;
      const double ld = curve_length(dl, curve, 1e-9).value;
      const double lb = bs_length(k, curve, 1e-8).value;
      ratios.push_back(ld / lb);
    }
    double c = 0;
    for (double r : ratios) c += r;
    c /= double(ratios.size());
    for (double r : ratios) CHECK(std::abs(r - c) < 1e-3);
  }
}

TEST_CASE("metric kind parsing") {
  CHECK(MetricKind::from_string("delta")->tag == MetricKind::Tag::delta);
  CHECK(MetricKind::from_string("delta-hat")->tag ==
        MetricKind::Tag::delta_hat);
  CHECK(MetricKind::from_string("rho")->tag == MetricKind::Tag::rho_disk);
  CHECK(!MetricKind::from_string("nope").has_value());
  CHECK_THROWS_AS(
      (void)resolve_metric(MetricKind{MetricKind::Tag::delta}, nullptr),
      ValidationError);
}
