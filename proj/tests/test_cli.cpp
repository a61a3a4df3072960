#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "rkhs/report.hpp"
#include "rkhs_cli/commands.hpp"

using namespace rkhs;
using namespace rkhs::cli;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(RKHS_CLI_PATH) + " " + args;
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("dist-table command") {
  DistTableCmd cmd;
  cmd.kernel = "dhb:alpha=1";
  cmd.metric = "delta";
  cmd.points = "[0, 0.6]";
  cmd.out = "/tmp/rkhs_cli_dist.json";
  CHECK(run_dist_table(cmd) == kExitOk);
  const auto j = nlohmann::json::parse(slurp(cmd.out));
  CHECK(j.at("schema") == "rkhs-geometry/1");
  CHECK(j.at("matrix").at(0).at(1).get<double>() ==
        doctest::Approx(0.6).epsilon(1e-13));
  CHECK(j.at("matrix").at(0).at(0).get<double>() == 0.0);

  cmd.format = "csv";
  cmd.out = "/tmp/rkhs_cli_dist.csv";
  CHECK(run_dist_table(cmd) == kExitOk);
  const std::string csv = slurp(cmd.out);
  CHECK(csv.substr(0, 10) == "i,j,value\n");

  // undefined distances render as NA in CSV and null in JSON
  {
    std::ofstream f("/tmp/rkhs_cli_degenerate.json");
    f << R"({"points":[0.0, 1.0],"matrix":[[1.0,0.0],[0.0,0.0]]})";
  }
  DistTableCmd deg;
  deg.kernel = "custom:file=/tmp/rkhs_cli_degenerate.json";
  deg.points = "[0, 1]";
  deg.format = "csv";
  deg.out = "/tmp/rkhs_cli_deg.csv";
  CHECK(run_dist_table(deg) == kExitOk);
  CHECK(slurp(deg.out).find("NA") != std::string::npos);
  deg.format = "json";
  deg.out = "/tmp/rkhs_cli_deg.json";
  CHECK(run_dist_table(deg) == kExitOk);
  CHECK(nlohmann::json::parse(slurp(deg.out)).at("matrix").at(0).at(1)
            .is_null());
}

TEST_CASE("render determinism and float round-trips") {
  DistTableCmd cmd;
  cmd.kernel = "product(dhb:alpha=1,dhb:alpha=0)";
  cmd.metric = "delta-hat";
  cmd.points = "[0.1, [0.25, -0.3], 0.7]";
  cmd.out = "/tmp/rkhs_cli_det_a.json";
  CHECK(run_dist_table(cmd) == kExitOk);
  cmd.out = "/tmp/rkhs_cli_det_b.json";
  CHECK(run_dist_table(cmd) == kExitOk);
  CHECK(slurp("/tmp/rkhs_cli_det_a.json") == slurp("/tmp/rkhs_cli_det_b.json"));

  // 17 significant digits round-trip exactly through parse -> render
  for (double v : {0.6, 1.0 / 3.0, 0.59999999999999998, 2.2250738585072014e-308,
                   12345.678901234567}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
    CHECK(format_double(std::strtod(s.c_str(), nullptr)) == s);
  }
}

TEST_CASE("np-test, series-check, zeroset, subspace commands") {
  NpTestCmd np;
  np.kernel = "dhb:alpha=2";
  np.points = "[0.5, -0.5]";
  np.out = "/tmp/rkhs_cli_np.json";
  CHECK(run_np_test(np) == kExitOk);
  const auto jn = nlohmann::json::parse(slurp(np.out));
  CHECK(jn.at("is_psd") == false);
  CHECK(jn.at("min_eigenvalue").get<double>() ==
        doctest::Approx(-0.125).epsilon(1e-12));

  SeriesCheckCmd ser;
  ser.out = "/tmp/rkhs_cli_series.json";
  CHECK(run_series_check(ser) == kExitOk);
  const auto js = nlohmann::json::parse(slurp(ser.out));
  CHECK(js.at("rows").at(0).at("jperp_exceeds_h") == true);
  CHECK(js.at("rows").at(1).at("jperp_exceeds_h") == false);
  CHECK(js.at("lhs_c6").get<double>() == doctest::Approx(-96.0).epsilon(0.02));

  ZerosetCmd zs;
  zs.space = "hardy";
  zs.config = R"({"generator":"geometric","q":0.5,"prefix":20})";
  zs.queries = "[0.5, 0.3]";
  zs.out = "/tmp/rkhs_cli_zeroset.json";
  CHECK(run_zeroset(zs) == kExitOk);
  const auto jz = nlohmann::json::parse(slurp(zs.out));
  CHECK(jz.at("classification") == "converges");
  CHECK(jz.at("admissible") == true);
  CHECK(std::abs(jz.at("query_values").at(0).at(0).get<double>()) <= 1e-12);

  zs.space = "dirichlet";
  zs.out = "/tmp/rkhs_cli_zeroset_d.json";
  CHECK(run_zeroset(zs) == kExitOk);
  const auto jd = nlohmann::json::parse(slurp(zs.out));
  CHECK(jd.at("classification") == "diverges-to-zero");

  SubspaceCmd sc;
  sc.kernel = "dhb:alpha=2";
  sc.subspace = "vanish:points=[0]";
  sc.pairs = "[[0.1, -0.1], [0.5, -0.5]]";
  sc.out = "/tmp/rkhs_cli_subspace.json";
  CHECK(run_subspace(sc) == kExitOk);
  const auto jsub = nlohmann::json::parse(slurp(sc.out));
  CHECK(jsub.at("claim") == "delta_J <= delta_H");
  CHECK(jsub.at("pass") == true);

  // unsupported claims degrade to raw tabulation, not an error
  sc.kernel = "fock:beta=1";
  sc.out = "/tmp/rkhs_cli_subspace_raw.json";
  CHECK(run_subspace(sc) == kExitOk);
  CHECK(nlohmann::json::parse(slurp(sc.out)).at("claim") ==
        "none (raw values only)");
}

TEST_CASE("cli binary: exit codes and byte-identical reruns") {
  // spec'd examples through the real binary
  CHECK(run_binary("dist-table --kernel dhb:alpha=1 --metric delta "
                   "--points [0,0.6] --out /tmp/rkhs_bin_a.json") == 0);
  CHECK(run_binary("identity-check --suite magic --samples 0 "
                   "--out /tmp/rkhs_bin_magic0.json") == 0);
  const auto j = nlohmann::json::parse(slurp("/tmp/rkhs_bin_magic0.json"));
  CHECK(j.at("suites").at(0).at("findings").empty());

  CHECK(run_binary("np-test --kernel dhb:alpha=2 --points [0.5,-0.5] "
                   "--out /tmp/rkhs_bin_np.json") == 0);

  // usage errors exit 2
  CHECK(run_binary("dist-table --kernel dbh:alpha=1 --points [0] "
                   "--out /dev/null 2>/dev/null") == 2);
  CHECK(run_binary("dist-table --kernel dhb:alpha=1 --points [3.7] "
                   "--out /dev/null 2>/dev/null") == 2);
  CHECK(run_binary("no-such-verb 2>/dev/null") == 2);

  // identical seeds give identical bytes; identity suite at small samples
  CHECK(run_binary("identity-check --suite all --samples 8 --seed 123 "
                   "--out /tmp/rkhs_bin_id1.json") == 0);
  CHECK(run_binary("identity-check --suite all --samples 8 --seed 123 "
                   "--out /tmp/rkhs_bin_id2.json") == 0);
  CHECK(slurp("/tmp/rkhs_bin_id1.json") == slurp("/tmp/rkhs_bin_id2.json"));
}

TEST_CASE("cli binary: geodesic paths and bs-geodesic tables") {
  CHECK(run_binary("geodesic --kernel dhb:alpha=1 --metric delta --from 0 "
                   "--to 0.4 --grid 61 --format csv "
                   "--out /tmp/rkhs_bin_geo.csv") == 0);
  const std::string csv = slurp("/tmp/rkhs_bin_geo.csv");
  CHECK(csv.substr(0, 8) == "i,re,im\n");

  CHECK(run_binary("dist-table --kernel dhb:alpha=1 --metric bs-geodesic "
                   "--points [0,0.4] --grid 61 "
                   "--out /tmp/rkhs_bin_bsg.json") == 0);
  const auto j = nlohmann::json::parse(slurp("/tmp/rkhs_bin_bsg.json"));
  // geodesic distance of ds^2 = T |dz|^2 from 0 to 0.4: artanh(0.4)
  CHECK(j.at("matrix").at(0).at(1).get<double>() ==
        doctest::Approx(std::atanh(0.4)).epsilon(2e-3));
}
