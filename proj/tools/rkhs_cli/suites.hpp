#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rkhs::cli {

/// One identity suite run. Suites are named after the identities they pin
/// down; CI output maps one-to-one onto those anchors.
struct SuiteResult {
  std::string name;
  long samples = 0;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  bool pass = false;
  std::vector<std::string> failures;
  std::vector<std::pair<std::string, double>> extras;
};

std::vector<std::string> suite_names();
long suite_default_samples(const std::string& name);
double suite_default_tolerance(const std::string& name);

/// Runs one suite; samples < 0 means the suite default. Deterministic in
/// (name, samples, seed): all random draws happen before any parallel work.
SuiteResult run_suite(const std::string& name, long samples,
                      std::uint64_t seed, std::optional<double> tol_override);

}  // namespace rkhs::cli
