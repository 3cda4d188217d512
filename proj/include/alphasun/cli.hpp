#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace alphasun {

// Parsed command line. Grids are inclusive of start and of any stop
// landing within half a step.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  std::vector<double> points() const;
};

struct RunConfig {
  std::string subcommand;
  double alpha = 0.5;
  double gamma = 1.0;
  std::optional<GridSpec> alpha_grid;
  std::vector<double> gamma_list;
  std::optional<GridSpec> x_grid;
  int n_max = 20;
  int m_max = 0;  // 0: follow n_max
  long K = 2000;
  long J = 1000;
  std::string out;  // file for single-CSV commands, directory for figures
  std::optional<double> rel_tol;
  int threads = 0;
  std::vector<std::string> suites;
};

// Exit codes: 0 success, 1 verification failure, 2 bad configuration,
// 3 numerical failure.
int cmd_coeffs(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_figures(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full entry point minus main(): parses args (no program name), applies
// ALPHASUN_LOG, dispatches, maps exceptions to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace alphasun
