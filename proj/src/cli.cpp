#include <algorithm>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "l0l1fw/harness.hpp"
#include "l0l1fw/trace_io.hpp"

namespace l0l1fw {

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Re-reads everything just written so that success implies well-formed files.
void verify_outputs(const ExperimentResult& result) {
  for (const auto& path : result.trace_files) {
    std::ifstream in(path);
    try {
      if (read_trace_csv(in).empty()) throw CsvFormatError("no records");
    } catch (const CsvFormatError& e) {
      throw ExperimentError(path.string() + ": " + e.what());
    }
  }
  std::ifstream in(result.summary_file);
  try {
    read_summary_csv(in);
  } catch (const CsvFormatError& e) {
    throw ExperimentError(result.summary_file.string() + ": " + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Runs Frank-Wolfe variants on synthetic logistic-regression grids", "fwbench"};

  std::string config_path;
  std::string setting;
  std::string sizes;
  std::string solvers;
  std::uint64_t seed = 0;
  std::string out_dir;
  std::size_t max_iter = 0;
  double gap_tol = 0.0;
  double rho = 0.0;
  double l0_init = 0.0;
  double l1_init = 0.0;
  std::size_t threads = 1;

  auto* o_config = app.add_option("--config", config_path, "JSON experiment file");
  auto* o_setting = app.add_option(
      "--setting", setting, "l2ball_npoints, l2ball_dim, simplex_dim, box_dim or all");
  auto* o_sizes = app.add_option("--sizes", sizes, "comma-separated n or d values");
  auto* o_solvers = app.add_option(
      "--solvers", solvers, "comma-separated subset of classic,adaptive_classic,l0l1,adapt_l0l1, or all");
  auto* o_seed = app.add_option("--seed", seed, "master seed");
  auto* o_out = app.add_option("--out", out_dir, "output directory");
  auto* o_max_iter = app.add_option("--max-iter", max_iter, "iteration budget")->check(CLI::PositiveNumber);
  auto* o_gap_tol = app.add_option("--gap-tol", gap_tol, "Frank-Wolfe gap tolerance")->check(CLI::NonNegativeNumber);
  auto* o_rho = app.add_option("--rho", rho, "adaptation factor")->check(CLI::Range(1.0, 1e300));
  auto* o_l0 = app.add_option("--l0-init", l0_init, "initial L0 of adapt_l0l1")->check(CLI::PositiveNumber);
  auto* o_l1 = app.add_option("--l1-init", l1_init, "initial L1 of adapt_l0l1")->check(CLI::PositiveNumber);
  auto* o_threads = app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto usage_error = [&](const std::string& message) {
    err << "error: " << message << "\n\n" << app.help();
    return kExitUsage;
  };

  ExperimentConfig config;
  if (o_config->count() > 0) {
    try {
      config = load_experiment_config(config_path);
    } catch (const std::invalid_argument& e) {
      return usage_error(e.what());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kExitRuntime;
    }
  } else {
    if (o_setting->count() == 0) return usage_error("either --config or --setting is required");
    config.solver = default_benchmark_solver_config();
    config.solvers = {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                      SolverKind::adapt_l0l1};
    config.output_dir = "results";
  }

  try {
    if (o_setting->count() > 0) {
      if (setting == "all") {
        config.settings = {GridSetting::l2ball_npoints, GridSetting::l2ball_dim,
                           GridSetting::simplex_dim, GridSetting::box_dim};
      } else {
        config.settings = {parse_grid_setting(setting)};
      }
    }
    if (o_sizes->count() > 0) {
      config.sizes.clear();
      for (const auto& item : split_list(sizes)) {
        std::size_t pos = 0;
        const long long v = std::stoll(item, &pos);
        if (pos != item.size() || v < 1) throw std::invalid_argument("bad size '" + item + "'");
        config.sizes.push_back(static_cast<std::size_t>(v));
      }
    }
    if (o_solvers->count() > 0) {
      config.solvers.clear();
      const auto names = split_list(solvers);
      if (names.size() == 1 && names.front() == "all") {
        config.solvers = {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
                          SolverKind::adapt_l0l1};
      } else {
        for (const auto& name : names) config.solvers.push_back(parse_solver_kind(name));
      }
    }
    if (o_seed->count() > 0) config.master_seed = seed;
    if (o_out->count() > 0) config.output_dir = out_dir;
    if (o_max_iter->count() > 0) config.solver.max_iter = max_iter;
    if (o_gap_tol->count() > 0) config.solver.gap_tol = gap_tol;
    if (o_rho->count() > 0) config.solver.rho = rho;
    if (o_l0->count() > 0) config.solver.l0_init = l0_init;
    if (o_l1->count() > 0) config.solver.l1_init = l1_init;
    if (o_threads->count() > 0) config.threads = threads;
    if (config.output_dir.empty()) throw std::invalid_argument("output directory is empty");
    config.validate();
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::out_of_range& e) {
    return usage_error(std::string("value out of range: ") + e.what());
  }

  try {
    const ExperimentResult result = run_experiment(config);
    verify_outputs(result);
    out << "instances: " << result.instances.size() << '\n';
    out << "traces:    " << result.trace_files.size() << " in "
        << (config.output_dir / "traces").string() << '\n';
    out << "summary:   " << result.summary_file.string() << '\n';
    out << "report:    " << result.report_file.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

}  // namespace l0l1fw
