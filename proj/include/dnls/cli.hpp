#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dnls::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kAdmissibility = 2,
  kPeriodBound = 3,
  kVerification = 4,
};

enum class Command { solve, verify, limit_study, elliptic_check };
enum class Format { csv, json };

struct RunConfig {
  Command command = Command::solve;
  double omega = 1;
  double c = 0;
  bool context_given = false;  // verify only uses (omega, c) when asked to
  std::optional<double> L;
  std::vector<double> L_list;
  std::size_t n = 2048;
  int m_max = 3;
  Format format = Format::csv;
  std::string output;  // empty: stdout
  unsigned jobs = 1;
  std::vector<std::string> suites;
  std::optional<double> tol;
  std::size_t samples = 0;  // solve: rows of (x, Phi^L, Phi)
  std::optional<double> k;  // elliptic-check
  std::optional<double> u;
};

// Each command writes its table to out and diagnostics to err; the return
// value is the process exit code.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_limit_study(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_elliptic_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point: parse, validate, dispatch, honour --output.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool color = false);

}  // namespace dnls::cli
