#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "l0l1fw/datagen.hpp"
#include "l0l1fw/diagnostics.hpp"
#include "l0l1fw/solvers.hpp"

namespace l0l1fw {

/// Benchmark description. `settings` holds one setting, or all four when the
/// config names "all"; empty `sizes` means each setting's default sizes.
struct ExperimentConfig {
  std::vector<GridSetting> settings;
  std::vector<std::size_t> sizes;
  std::vector<SolverKind> solvers;
  SolverConfig solver;
  std::uint64_t master_seed = 0;
  std::filesystem::path output_dir;
  std::size_t threads = 1;
  GridDefaults grid;

  /// Throws std::invalid_argument on empty settings / solvers.
  void validate() const;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the JSON config layout (see README). Unknown keys are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Default solver parameters of the benchmark: 10^4 iterations, gap 1e-6,
/// rho = 2, (L0, L1) starting at (1, 1) with maxima 1e12.
SolverConfig default_benchmark_solver_config();

/// Logistic problem of a grid instance, started at the set's centre.
Problem build_logistic_problem(const GridInstance& instance, const Dataset& data);

struct RunResult {
  SolverKind solver = SolverKind::classic;
  Trace trace;
  RateDiagnostics diagnostics;
  double wall_time_ms = 0.0;
};

struct InstanceResult {
  GridInstance instance;
  Problem problem;
  double f_star = 0.0;  // lower bound: max over all runs of f_k - gap_k
  BoundMetadata metadata;
  std::vector<RunResult> runs;  // in ExperimentConfig::solvers order
};

struct ExperimentResult {
  std::vector<InstanceResult> instances;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
  std::filesystem::path report_file;
};

/// Runs every solver on every grid instance, then writes
///   <out>/traces/<instance>__<solver>.csv, <out>/summary.csv, <out>/report.txt
/// Runs are spread over `threads` workers; output is independent of the
/// thread count. No files are written when output_dir is empty.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// key=value report: instance metadata, per-run diagnostics and the
/// iterations-to-tolerance comparison. Contains no timing data.
void write_report(const ExperimentConfig& config, const ExperimentResult& result,
                  std::ostream& out);

/// Command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace l0l1fw
