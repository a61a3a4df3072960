#include "rkhs_cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "rkhs/inner_distance.hpp"
#include "rkhs/metrics.hpp"
#include "rkhs/npkernels.hpp"
#include "rkhs/report.hpp"
#include "rkhs/spec_string.hpp"
#include "rkhs/subspaces.hpp"
#include "rkhs_cli/sampling.hpp"
#include "rkhs_cli/suites.hpp"

namespace rkhs::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline text or @file indirection
std::string materialize(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return slurp(arg.substr(1));
  return arg;
}

void emit(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty()) {
    std::cout << bytes;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write file '" + out_path + "'");
  out << bytes;
}

std::optional<double> metric_value(const DistanceFn& fn, const Point& a,
                                   const Point& b) {
  try {
    return fn(a, b);
  } catch (const UndefinedValue&) {
    return std::nullopt;
  }
}

}  // namespace

int run_dist_table(const DistTableCmd& cmd) {
  const Kernel k = parse_kernel_spec(cmd.kernel);
  const auto kind = MetricKind::from_string(cmd.metric);
  if (!kind) throw ValidationError("unknown metric '" + cmd.metric + "'");
  const auto points = parse_points_json(materialize(cmd.points), k);
  const auto n = static_cast<long>(points.size());

  std::vector<std::optional<double>> cells(std::size_t(n) * n);
  if (kind->tag == MetricKind::Tag::bs_geodesic) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        if (j < i) {
          cells[i * n + j] = cells[j * n + i];
        } else if (i == j) {
          cells[i * n + j] = 0.0;
        } else {
          cells[i * n + j] =
              bs_geodesic_distance(k, points[i], points[j], cmd.grid).distance;
        }
      }
  } else {
    const DistanceFn fn = resolve_metric(*kind, &k);
    parallel_for(n * n, [&](long c) {
      const long i = c / n, j = c % n;
      if (j < i) return;  // filled from the upper triangle afterwards
      cells[c] = (i == j) ? std::optional<double>(0.0)
                          : metric_value(fn, points[i], points[j]);
    });
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < i; ++j) cells[i * n + j] = cells[j * n + i];
  }

  if (cmd.format == "csv") {
    CsvWriter csv({"i", "j", "value"});
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        const auto& v = cells[i * n + j];
        csv.row({std::to_string(i), std::to_string(j),
                 v ? format_double(*v) : "NA"});
      }
    emit(cmd.out, csv.str());
    return kExitOk;
  }
  if (cmd.format != "json")
    throw ValidationError("format must be json or csv");
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("dist-table");
  w.key("kernel").value(cmd.kernel);
  w.key("metric").value(kind->to_string());
  w.key("points").begin_array();
  for (const auto& p : points) w.value_point(p);
  w.end_array();
  w.key("matrix").begin_array();
  for (long i = 0; i < n; ++i) {
    w.begin_array();
    for (long j = 0; j < n; ++j) w.value_optional(cells[i * n + j]);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return kExitOk;
}

int run_identity_check(const IdentityCheckCmd& cmd) {
  std::vector<std::string> names;
  if (cmd.suite == "all")
    names = suite_names();
  else
    names.push_back(cmd.suite);

  bool all_pass = true;
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("identity-check");
  w.key("seed").value(static_cast<long>(cmd.seed));
  w.key("suites").begin_array();
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, cmd.samples, cmd.seed, cmd.tol);
    all_pass = all_pass && r.pass;
    w.begin_object();
    w.key("name").value(r.name);
    w.key("samples").value(r.samples);
    w.key("tolerance").value(r.tolerance);
    w.key("max_deviation").value(r.max_deviation);
    w.key("pass").value(r.pass);
    w.key("extras").begin_object();
    for (const auto& [ek, ev] : r.extras) w.key(ek).value(ev);
    w.end_object();
    w.key("findings").begin_array();
    for (const auto& f : r.failures) w.value(f);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("pass").value(all_pass);
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return all_pass ? kExitOk : kExitAssertionFailed;
}

int run_geodesic(const GeodesicCmd& cmd) {
  const Kernel k = parse_kernel_spec(cmd.kernel);
  const auto kind = MetricKind::from_string(cmd.metric);
  if (!kind) throw ValidationError("unknown metric '" + cmd.metric + "'");
  const auto from = parse_points_json("[" + materialize(cmd.from) + "]", k);
  const auto to = parse_points_json("[" + materialize(cmd.to) + "]", k);
  if (from.size() != 1 || to.size() != 1)
    throw ValidationError("geodesic: --from/--to take a single point each");

  GeodesicResult g;
  if (kind->tag == MetricKind::Tag::bs_geodesic) {
    g = bs_geodesic_distance(k, from[0], to[0], cmd.grid);
  } else {
    const DistanceFn fn = resolve_metric(*kind, &k);
    g = inner_distance(fn, &k, from[0], to[0], cmd.grid);
  }

  if (cmd.format == "csv") {
    CsvWriter csv({"i", "re", "im"});
    for (std::size_t i = 0; i < g.path.size(); ++i)
      csv.row({std::to_string(i), format_double(g.path[i].z().real()),
               format_double(g.path[i].z().imag())});
    emit(cmd.out, csv.str());
    return kExitOk;
  }
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("geodesic");
  w.key("kernel").value(cmd.kernel);
  w.key("metric").value(kind->to_string());
  w.key("from").value_point(from[0]);
  w.key("to").value_point(to[0]);
  w.key("grid").value(cmd.grid);
  w.key("direct").value(g.direct);
  w.key("inner_distance").value(g.distance);
  w.key("gap").value(g.distance - g.direct);
  w.key("converged").value(g.converged);
  w.key("path").begin_array();
  for (const auto& p : g.path) w.value_point(p);
  w.end_array();
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return kExitOk;
}

namespace {

ZeroSetGenerator generator_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ZeroSetGenerator g;
  const std::string kind = j.at("generator").get<std::string>();
  if (kind == "explicit") {
    g.kind = ZeroSetGenerator::Kind::explicit_list;
    for (const auto& e : j.at("points")) g.points.push_back(e.get<double>());
  } else if (kind == "geometric") {
    g.kind = ZeroSetGenerator::Kind::geometric;
    g.a = j.value("a", 1.0);
    g.q = j.value("q", 0.5);
  } else if (kind == "power") {
    g.kind = ZeroSetGenerator::Kind::power;
    g.a = j.value("a", 1.0);
    g.p = j.value("p", 2.0);
  } else {
    throw ValidationError("zeroset: generator must be explicit|geometric|power");
  }
  g.prefix = j.value("prefix", std::size_t(10000));
  return g;
}

}  // namespace

int run_zeroset(const ZerosetCmd& cmd) {
  if (cmd.space != "hardy" && cmd.space != "dirichlet")
    throw ValidationError("zeroset: --space must be hardy or dirichlet");
  const ZeroSetGenerator gen = generator_from_json(materialize(cmd.config));
  const Kernel k =
      cmd.space == "hardy" ? Kernel::dhb(1.0) : Kernel::dhb(0.0);

  std::vector<Point> queries;
  if (!cmd.queries.empty())
    queries = parse_points_json(materialize(cmd.queries), k);

  const std::size_t nf = cmd.factors < 0 ? gen.prefix
                                         : static_cast<std::size_t>(cmd.factors);
  const ZeroSetReport rep =
      blaschke_product(k, gen, Point(cmd.base), nf, queries);
  const ZeroSetCriteria crit = zero_set_criteria(
      cmd.space == "hardy" ? ZeroSetSpace::hardy : ZeroSetSpace::dirichlet,
      gen);

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("zeroset");
  w.key("space").value(cmd.space);
  w.key("generator").value(gen.describe());
  w.key("basepoint").value(cmd.base);
  w.key("points_used").value(static_cast<long>(rep.points.size()));
  w.key("criterion_sum_partial").value(rep.criterion_sum);
  w.key("criterion_sum_finite").value(rep.criterion_sum_finite);
  w.key("classification")
      .value(rep.classification == ZeroSetReport::Classification::converges
                 ? "converges"
                 : "diverges-to-zero");
  w.key("partial_products").begin_array();
  // log-spaced prefix samples keep the report small
  for (std::size_t i = 1; i <= rep.partial_products.size(); i *= 2)
    w.value(rep.partial_products[i - 1]);
  if (!rep.partial_products.empty())
    w.value(rep.partial_products.back());
  w.end_array();
  w.key("blaschke_sum").value(crit.blaschke_sum);
  w.key("blaschke_converges")
      .value(crit.blaschke_verdict == SumVerdict::converges);
  w.key("shapiro_shields_sum").value(crit.shapiro_shields_sum);
  w.key("shapiro_shields_converges")
      .value(crit.shapiro_shields_verdict == SumVerdict::converges);
  w.key("admissible").value(crit.admissible);
  w.key("query_values").begin_array();
  for (const auto& v : rep.query_values) w.value_complex(v);
  w.end_array();
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return kExitOk;
}

int run_subspace(const SubspaceCmd& cmd) {
  const Kernel k = parse_kernel_spec(cmd.kernel);
  const SubspaceSpecString spec = parse_subspace_spec(cmd.subspace);
  Subspace sub = [&] {
    if (spec.kind == SubspaceSpecString::Kind::hardy_inner) {
      if (!dhb_alpha(k) || *dhb_alpha(k) != 1.0)
        throw ValidationError("hardy-inner subspaces need kernel dhb:alpha=1");
      return Subspace::hardy_inner({spec.points, 1.0});
    }
    VanishOnSpec v;
    for (Complex p : spec.points) v.points.emplace_back(p);
    v.orders = spec.orders;
    return Subspace::vanish_on(k, std::move(v));
  }();

  const auto j = nlohmann::json::parse(materialize(cmd.pairs));
  if (!j.is_array()) throw ValidationError("pairs: expected a JSON array");
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& e : j) {
    const auto pts = parse_points_json(e.dump(), k);
    if (pts.size() != 2)
      throw ValidationError("pairs: each entry is a two-point array");
    pairs.emplace_back(pts[0], pts[1]);
  }

  // claims are only checked where a proven statement covers the family
  std::optional<MonotonicityReport> mono;
  try {
    mono = monotonicity_report(k, sub, pairs);
  } catch (const UnsupportedError&) {
  }

  bool all_ok = true;
  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("subspace");
  w.key("kernel").value(cmd.kernel);
  w.key("subspace").value(cmd.subspace);
  w.key("claim").value(mono ? mono->claim : "none (raw values only)");
  w.key("rows").begin_array();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    w.begin_object();
    w.key("x").value_point(x);
    w.key("y").value_point(y);
    const auto opt_delta = [&](SubspacePart part) -> std::optional<double> {
      try {
        return delta_sub(sub, part, x, y);
      } catch (const UndefinedValue&) {
        return std::nullopt;
      }
    };
    w.key("delta_h").value(delta(k, x, y));
    w.key("delta_j").value_optional(opt_delta(SubspacePart::j));
    w.key("delta_jperp").value_optional(opt_delta(SubspacePart::jperp));
    if (mono) {
      w.key("ok").value(mono->rows[i].ok);
      all_ok = all_ok && mono->rows[i].ok;
    }
    w.end_object();
  }
  w.end_array();
  w.key("pass").value(all_ok);
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return all_ok ? kExitOk : kExitAssertionFailed;
}

int run_np_test(const NpTestCmd& cmd) {
  const Kernel k = parse_kernel_spec(cmd.kernel);
  const auto points = parse_points_json(materialize(cmd.points), k);
  const NPVerdict v = np_test(k, points);

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("np-test");
  w.key("kernel").value(cmd.kernel);
  w.key("points").begin_array();
  for (const auto& p : points) w.value_point(p);
  w.end_array();
  w.key("trace").value(v.trace);
  w.key("min_eigenvalue").value(v.min_eigenvalue);
  w.key("is_psd").value(v.is_psd);
  w.key("witness");
  if (v.is_psd) {
    w.null();
  } else {
    w.begin_array();
    for (Eigen::Index i = 0; i < v.witness.size(); ++i)
      w.value_complex(v.witness(i));
    w.end_array();
  }
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return kExitOk;
}

int run_series_check(const SeriesCheckCmd& cmd) {
  std::vector<double> ts = cmd.t_values;
  if (ts.empty()) ts = {0.1, 0.9};

  JsonWriter w;
  w.begin_object();
  w.key("schema").value(kReportSchema);
  w.key("command").value("series-check");
  w.key("rows").begin_array();
  for (double t : ts) {
    const TSeriesCheck c = t_series_check(t);
    w.begin_object();
    w.key("t").value(t);
    w.key("lhs").value(c.lhs);
    w.key("rhs").value(c.rhs);
    w.key("difference").value(c.difference);
    w.key("delta_jperp").value(c.delta_jperp);
    w.key("delta_h").value(c.delta_h);
    w.key("jperp_exceeds_h").value(c.delta_jperp > c.delta_h);
    w.end_object();
  }
  w.end_array();
  const TSeriesCoefficients coef = t_series_coefficients();
  w.key("lhs_c6").value(coef.lhs_c6);
  w.key("rhs_c6").value(coef.rhs_c6);
  w.key("lhs_c8_sample").value(coef.lhs_c8_sample);
  w.key("rhs_c8_sample").value(coef.rhs_c8_sample);
  w.end_object();
  emit(cmd.out, w.str() + "\n");
  return kExitOk;
}

}  // namespace rkhs::cli
