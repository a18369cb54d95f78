#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dnls {

struct SuiteResult {
  std::string name;
  double max_residual = 0;  // worst normalized violation measure
  double threshold = 0;
  bool pass = false;
  std::string detail;  // worst case, for the log
};

struct VerifyOptions {
  std::optional<double> tolerance;                       // replaces every threshold
  std::optional<std::pair<double, double>> context;      // (omega, c) for the profile suites
  std::vector<std::string> suites;                       // empty: all
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);
std::vector<SuiteResult> run_verify(const VerifyOptions& opts);

// (omega, c) pairs and half-lengths exercised by the profile suites.
std::vector<std::pair<double, double>> standard_contexts();
std::vector<double> standard_lengths(double L0);

// Richardson-extrapolated central difference, O(h^4).
double central_difference(const std::function<double(double)>& f, double x, double h);

}  // namespace dnls
