#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rkhs::cli {

// exit codes: 0 all checks passed, 1 a mathematical assertion failed,
// 2 usage / domain / parse error
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitUsage = 2;

struct DistTableCmd {
  std::string kernel;
  std::string metric = "delta";
  std::string points;  // inline JSON or @file
  std::string format = "json";
  std::string out;  // empty = stdout
  int grid = 128;   // bs-geodesic only
};
int run_dist_table(const DistTableCmd& cmd);

struct IdentityCheckCmd {
  std::string suite = "all";
  long samples = -1;  // -1 = per-suite default
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string out;
};
int run_identity_check(const IdentityCheckCmd& cmd);

struct GeodesicCmd {
  std::string kernel;
  std::string metric = "delta";
  std::string from, to;  // point JSON
  int grid = 241;
  std::string format = "json";
  std::string out;
};
int run_geodesic(const GeodesicCmd& cmd);

struct ZerosetCmd {
  std::string space = "hardy";  // hardy | dirichlet
  std::string config;           // generator JSON, inline or @file
  double base = 0.0;            // base point x0 on the real axis
  long factors = -1;            // -1 = generator prefix
  std::string queries;          // optional point JSON
  std::string out;
};
int run_zeroset(const ZerosetCmd& cmd);

struct SubspaceCmd {
  std::string kernel;
  std::string subspace;  // vanish:... | hardy-inner:...
  std::string pairs;     // JSON [[p,q],...]
  std::string format = "json";
  std::string out;
};
int run_subspace(const SubspaceCmd& cmd);

struct NpTestCmd {
  std::string kernel;
  std::string points;
  std::string out;
};
int run_np_test(const NpTestCmd& cmd);

struct SeriesCheckCmd {
  std::vector<double> t_values;  // default {0.1, 0.9}
  std::string out;
};
int run_series_check(const SeriesCheckCmd& cmd);

}  // namespace rkhs::cli
