#include "l0l1fw/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "l0l1fw/trace_io.hpp"

namespace l0l1fw {

void ExperimentConfig::validate() const {
  if (settings.empty()) throw std::invalid_argument("experiment: no setting given");
  if (solvers.empty()) throw std::invalid_argument("experiment: no solver given");
  for (auto s : sizes) {
    if (s < 1) throw std::invalid_argument("experiment: sizes must be >= 1");
  }
  if (threads < 1) throw std::invalid_argument("experiment: threads must be >= 1");
  solver.validate();
}

SolverConfig default_benchmark_solver_config() {
  SolverConfig c;
  c.max_iter = 10000;
  c.gap_tol = 1e-6;
  c.rho = 2.0;
  c.l0_init = 1.0;
  c.l1_init = 1.0;
  c.l0_max = 1e12;
  c.l1_max = 1e12;
  return c;
}

// ---------------------------------------------------------------------------
// JSON config

namespace {

using nlohmann::json;

std::vector<SolverKind> all_solvers() {
  return {SolverKind::classic, SolverKind::adaptive_classic, SolverKind::l0l1,
          SolverKind::adapt_l0l1};
}

std::vector<GridSetting> all_settings() {
  return {GridSetting::l2ball_npoints, GridSetting::l2ball_dim, GridSetting::simplex_dim,
          GridSetting::box_dim};
}

template <class T>
void read_if(const json& j, const char* key, T& target) {
  if (auto it = j.find(key); it != j.end()) target = it->get<T>();
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");

  static const std::set<std::string> known = {
      "setting", "sizes",  "solvers", "master_seed", "output_dir",    "threads",
      "max_iter", "gap_tol", "record_stride", "rho", "l0_init",       "l1_init",
      "l0_max",  "l1_max", "l_init",  "inner_cap",   "grid"};
  static const std::set<std::string> known_grid = {
      "fixed_features", "fixed_samples", "ball_radius",  "simplex_scale",
      "box_radius",     "noise_sigma",   "scale_base",   "solution_scale"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw std::invalid_argument("config: unknown key '" + key + "'");
  }

  ExperimentConfig c;
  c.solver = default_benchmark_solver_config();
  try {
    const std::string setting = j.at("setting").get<std::string>();
    c.settings = setting == "all" ? all_settings()
                                  : std::vector<GridSetting>{parse_grid_setting(setting)};
    read_if(j, "sizes", c.sizes);
    if (auto it = j.find("solvers"); it == j.end() || (it->is_string() && *it == "all")) {
      c.solvers = all_solvers();
    } else {
      for (const auto& name : it->get<std::vector<std::string>>()) {
        c.solvers.push_back(parse_solver_kind(name));
      }
    }
    read_if(j, "master_seed", c.master_seed);
    if (auto it = j.find("output_dir"); it != j.end()) c.output_dir = it->get<std::string>();
    read_if(j, "threads", c.threads);
    read_if(j, "max_iter", c.solver.max_iter);
    read_if(j, "gap_tol", c.solver.gap_tol);
    read_if(j, "record_stride", c.solver.record_stride);
    read_if(j, "rho", c.solver.rho);
    read_if(j, "l0_init", c.solver.l0_init);
    read_if(j, "l1_init", c.solver.l1_init);
    read_if(j, "l0_max", c.solver.l0_max);
    read_if(j, "l1_max", c.solver.l1_max);
    read_if(j, "l_init", c.solver.l_init);
    read_if(j, "inner_cap", c.solver.inner_cap);
    if (auto it = j.find("grid"); it != j.end()) {
      for (const auto& [key, _] : it->items()) {
        if (!known_grid.contains(key)) {
          throw std::invalid_argument("config: unknown grid key '" + key + "'");
        }
      }
      read_if(*it, "fixed_features", c.grid.fixed_features);
      read_if(*it, "fixed_samples", c.grid.fixed_samples);
      read_if(*it, "ball_radius", c.grid.ball_radius);
      read_if(*it, "simplex_scale", c.grid.simplex_scale);
      read_if(*it, "box_radius", c.grid.box_radius);
      read_if(*it, "noise_sigma", c.grid.noise_sigma);
      read_if(*it, "scale_base", c.grid.scale_base);
      read_if(*it, "solution_scale", c.grid.solution_scale);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

// ---------------------------------------------------------------------------

Problem build_logistic_problem(const GridInstance& instance, const Dataset& data) {
  Problem p;
  p.objective = std::make_shared<LogisticRegression>(data.matrix_a, data.labels);
  p.set = instance.set;
  p.x0 = instance.set->center();
  p.name = instance.id;
  return p;
}

namespace {

std::string trace_file_name(const InstanceResult& inst, SolverKind solver) {
  return inst.instance.id + "__" + std::string(to_string(solver)) + ".csv";
}

template <class Fn>
void write_file(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ExperimentError("cannot open " + path.string() + " for writing");
  fn(out);
  out.flush();
  if (!out) throw ExperimentError("failed writing " + path.string());
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  ExperimentResult result;
  for (auto setting : config.settings) {
    const auto sizes = config.sizes.empty() ? default_sizes(setting) : config.sizes;
    for (auto& inst : experiment_grid(setting, sizes, config.master_seed, config.grid)) {
      const Dataset data = generate_logistic_dataset(inst.data);
      InstanceResult ir;
      ir.problem = build_logistic_problem(inst, data);
      ir.instance = std::move(inst);
      ir.runs.resize(config.solvers.size());
      result.instances.push_back(std::move(ir));
    }
  }

  const std::size_t n_solvers = config.solvers.size();
  const std::size_t n_tasks = result.instances.size() * n_solvers;
  std::vector<std::exception_ptr> errors(n_tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      InstanceResult& inst = result.instances[t / n_solvers];
      const SolverKind kind = config.solvers[t % n_solvers];
      try {
        const auto start = std::chrono::steady_clock::now();
        RunResult run;
        run.solver = kind;
        run.trace = run_solver(kind, inst.problem, config.solver);
        run.wall_time_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        inst.runs[t % n_solvers] = std::move(run);
      } catch (const std::exception& e) {
        errors[t] = std::make_exception_ptr(ExperimentError(
            "instance " + inst.instance.id + ", solver " + std::string(to_string(kind)) +
            ": " + e.what()));
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < std::min(config.threads, n_tasks); ++i) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (auto& inst : result.instances) {
    double f_star = -std::numeric_limits<double>::infinity();
    for (const auto& run : inst.runs) f_star = std::max(f_star, fstar_lower_bound(run.trace.records));
    inst.f_star = f_star;
    inst.metadata.f_star = f_star;
    inst.metadata.diameter = inst.problem.set->diameter();
    inst.metadata.smoothness = inst.problem.objective->smoothness();
    inst.metadata.set_strong_convexity = inst.problem.set->strong_convexity();
    inst.metadata.pl_constant = inst.problem.pl_constant;
    inst.metadata.interior_radius = inst.problem.interior_radius;
    inst.metadata.adaptive = AdaptiveBoundInputs{config.solver.rho, config.solver.l0_init,
                                                 config.solver.l1_init, config.solver.l0_max,
                                                 config.solver.l1_max};
    for (auto& run : inst.runs) {
      run.diagnostics = rate_diagnostics(run.solver, run.trace, inst.metadata, config.solver.gap_tol);
    }
  }

  if (config.output_dir.empty()) return result;

  const auto trace_dir = config.output_dir / "traces";
  std::error_code ec;
  std::filesystem::create_directories(trace_dir, ec);
  if (ec) throw ExperimentError("cannot create " + trace_dir.string() + ": " + ec.message());

  for (const auto& inst : result.instances) {
    for (const auto& run : inst.runs) {
      const auto path = trace_dir / trace_file_name(inst, run.solver);
      write_file(path, [&](std::ostream& out) { write_trace_csv(run.trace, out); });
      result.trace_files.push_back(path);
    }
  }

  result.summary_file = config.output_dir / "summary.csv";
  write_file(result.summary_file, [&](std::ostream& out) {
    write_summary_header(out);
    for (const auto& inst : result.instances) {
      for (const auto& run : inst.runs) {
        SummaryRow row;
        row.instance_id = inst.instance.id;
        row.setting = std::string(to_string(inst.instance.setting));
        row.n = inst.instance.data.n_samples;
        row.d = inst.instance.data.n_features;
        row.solver = std::string(to_string(run.solver));
        row.iters_to_tol = run.diagnostics.iters_to_tol;
        row.final_gap = run.trace.records.back().fw_gap;
        row.final_f = run.trace.records.back().f_value;
        row.total_inner_checks = run.trace.total_inner_checks;
        row.wall_time_ms = run.wall_time_ms;
        write_summary_row(row, out);
      }
    }
  });

  result.report_file = config.output_dir / "report.txt";
  write_file(result.report_file, [&](std::ostream& out) { write_report(config, result, out); });
  return result;
}

void write_report(const ExperimentConfig& config, const ExperimentResult& result,
                  std::ostream& out) {
  out << "format=l0l1fw-report-1\n";
  out << "config.master_seed=" << config.master_seed << '\n';
  out << "config.max_iter=" << config.solver.max_iter << '\n';
  out << "config.gap_tol=" << format_double(config.solver.gap_tol) << '\n';
  out << "config.rho=" << format_double(config.solver.rho) << '\n';
  out << "config.l0_init=" << format_double(config.solver.l0_init) << '\n';
  out << "config.l1_init=" << format_double(config.solver.l1_init) << '\n';
  out << "config.l0_max=" << format_double(config.solver.l0_max) << '\n';
  out << "config.l1_max=" << format_double(config.solver.l1_max) << '\n';
  out << "config.l_init=" << format_double(config.solver.l_init) << '\n';

  for (const auto& inst : result.instances) {
    const std::string p = "instance." + inst.instance.id;
    const auto sm = inst.problem.objective->smoothness();
    out << p << ".setting=" << to_string(inst.instance.setting) << '\n';
    out << p << ".n=" << inst.instance.data.n_samples << '\n';
    out << p << ".d=" << inst.instance.data.n_features << '\n';
    out << p << ".seed=" << inst.instance.data.seed << '\n';
    out << p << ".set=" << inst.problem.set->name() << '\n';
    out << p << ".diameter=" << format_double(inst.metadata.diameter) << '\n';
    out << p << ".l0=" << format_double(sm.l0) << '\n';
    out << p << ".l1=" << format_double(sm.l1) << '\n';
    if (sm.classic_l) out << p << ".classic_l=" << format_double(*sm.classic_l) << '\n';
    if (inst.metadata.set_strong_convexity) {
      out << p << ".lambda=" << format_double(*inst.metadata.set_strong_convexity) << '\n';
    }
    out << p << ".fstar=" << format_double(inst.f_star) << '\n';
    for (const auto& run : inst.runs) {
      write_diagnostics("run." + inst.instance.id + "." + std::string(to_string(run.solver)),
                        run.diagnostics, out);
    }
  }

  for (const auto& inst : result.instances) {
    const std::string p = "compare." + inst.instance.id;
    std::optional<std::size_t> adapt;
    bool have_adapt = false;
    bool adapt_best = true;
    for (const auto& run : inst.runs) {
      const auto& it = run.diagnostics.iters_to_tol;
      out << p << '.' << to_string(run.solver) << ".iters_to_tol="
          << (it ? static_cast<long long>(*it) : -1LL) << '\n';
      if (run.solver == SolverKind::adapt_l0l1) {
        adapt = it;
        have_adapt = true;
      }
    }
    if (!have_adapt) continue;
    for (const auto& run : inst.runs) {
      const auto& it = run.diagnostics.iters_to_tol;
      // Not reaching the tolerance counts as infinitely many iterations.
      if (it && (!adapt || *it < *adapt)) adapt_best = false;
    }
    out << p << ".adapt_l0l1_best=" << (adapt_best ? 1 : 0) << '\n';
  }
}

}  // namespace l0l1fw
