#include <CLI11.hpp>
#include <iostream>

#include "rkhs/errors.hpp"
#include "rkhs_cli/commands.hpp"
#include "rkhs_cli/suites.hpp"

using namespace rkhs::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "rkhs-geometry: distance functions induced by reproducing kernel "
      "Hilbert spaces, with the operator, Nevanlinna-Pick, and invariant "
      "subspace machinery around them"};
  app.require_subcommand(1);

  DistTableCmd dist;
  auto* cd = app.add_subcommand("dist-table",
                                "pairwise distance table for a point list");
  cd->add_option("--kernel", dist.kernel, "kernel spec string")->required();
  cd->add_option("--metric", dist.metric,
                 "delta|delta-hat|delta-check|rho|beta|rho-ball|bs-geodesic");
  cd->add_option("--points", dist.points, "point list JSON (or @file)")
      ->required();
  cd->add_option("--format", dist.format, "json|csv");
  cd->add_option("--out", dist.out, "output path (default stdout)");
  cd->add_option("--grid", dist.grid, "grid resolution for bs-geodesic");

  IdentityCheckCmd idc;
  auto* ci = app.add_subcommand("identity-check",
                                "run a named identity suite (or all)");
  ci->add_option("--suite", idc.suite, [] {
       std::string s = "suite name: all";
       for (const auto& n : suite_names()) s += ", " + n;
       return s;
     }());
  ci->add_option("--samples", idc.samples, "sample count (default per suite)");
  ci->add_option("--seed", idc.seed, "seed; fully determines the sampling");
  double tol_opt = -1;
  ci->add_option("--tol", tol_opt, "tolerance override");
  ci->add_option("--out", idc.out, "output path");

  GeodesicCmd geo;
  auto* cg = app.add_subcommand("geodesic",
                                "inner distance and geodesic path search");
  cg->add_option("--kernel", geo.kernel, "kernel spec string")->required();
  cg->add_option("--metric", geo.metric, "metric tag");
  cg->add_option("--from", geo.from, "start point JSON")->required();
  cg->add_option("--to", geo.to, "end point JSON")->required();
  cg->add_option("--grid", geo.grid, "grid resolution (16..400)");
  cg->add_option("--format", geo.format, "json|csv");
  cg->add_option("--out", geo.out, "output path");

  ZerosetCmd zs;
  auto* cz = app.add_subcommand("zeroset",
                                "generalized Blaschke product zero-set report");
  cz->add_option("--space", zs.space, "hardy|dirichlet");
  cz->add_option("--config", zs.config,
                 "generator JSON {generator, params..., prefix} (or @file)")
      ->required();
  cz->add_option("--base", zs.base, "base point x0 on the real axis");
  cz->add_option("--factors", zs.factors, "number of factors (default prefix)");
  cz->add_option("--query", zs.queries, "evaluation points JSON");
  cz->add_option("--out", zs.out, "output path");

  SubspaceCmd sc;
  auto* cs = app.add_subcommand(
      "subspace", "invariant-subspace distance comparison table");
  cs->add_option("--kernel", sc.kernel, "kernel spec string")->required();
  cs->add_option("--subspace", sc.subspace,
                 "vanish:points=[...];orders=[...] | hardy-inner:zeros=[...]")
      ->required();
  cs->add_option("--pairs", sc.pairs, "JSON [[p,q],...] (or @file)")
      ->required();
  cs->add_option("--format", sc.format, "json");
  cs->add_option("--out", sc.out, "output path");

  NpTestCmd np;
  auto* cn = app.add_subcommand("np-test",
                                "finite-set positivity test of 1 - 1/K");
  cn->add_option("--kernel", np.kernel, "kernel spec string")->required();
  cn->add_option("--points", np.points, "point list JSON (or @file)")
      ->required();
  cn->add_option("--out", np.out, "output path");

  SeriesCheckCmd ser;
  auto* ce = app.add_subcommand(
      "series-check", "order-2 Bergman subspace small-t/large-t comparison");
  ce->add_option("--t", ser.t_values, "t values in (0,1)");
  ce->add_option("--out", ser.out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cd) return run_dist_table(dist);
    if (*ci) {
      if (tol_opt >= 0) idc.tol = tol_opt;
      return run_identity_check(idc);
    }
    if (*cg) return run_geodesic(geo);
    if (*cz) return run_zeroset(zs);
    if (*cs) return run_subspace(sc);
    if (*cn) return run_np_test(np);
    if (*ce) return run_series_check(ser);
  } catch (const rkhs::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
