#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "carchase/bench.hpp"
#include "carchase/grid.hpp"

namespace cc = carchase;

namespace {

// Load the binary table when its header matches; build (and save when a
// path was given) otherwise.
cc::ApproxTable obtain_table(const cc::RSConfig& cfg, const std::string& path,
                             bool allow_save) {
  cc::TableSpec spec;
  cc::ApproxTable table;
  if (!path.empty() && cc::ApproxTable::load(path, cfg, spec, table)) {
    return table;
  }
  table = cc::ApproxTable::build(cfg, spec);
  table.measure_epsilon(120000, 12345);
  if (!path.empty() && allow_save) table.save(path);
  return table;
}

int cmd_solve(const std::string& instance_path, const std::string& config_name,
              double timeout, const std::string& out_path,
              const std::string& table_path, const std::string& solution_path,
              std::size_t capacity, int t_window, double tau_init,
              double tau_final) {
  const auto cfg = cc::named_config(config_name);
  if (!cfg) {
    std::cerr << "unknown configuration: " << config_name << "\n";
    return 2;
  }
  cc::Instance inst = cc::load_instance(instance_path);

  cc::SolveOptions options;
  options.timeout_seconds = timeout;
  options.cache_capacity = capacity;
  options.planner.cache_mode = cfg->cache_mode;
  options.planner.heuristic_mode = cfg->heuristic_mode;
  if (t_window >= 0) options.planner.relevance.t_window = t_window;
  if (tau_init >= 0 || tau_final >= 0) {
    // Manual schedule: take the planner values verbatim.
    options.tune_for_map = false;
    if (tau_init >= 0) options.planner.tau_init = tau_init;
    if (tau_final >= 0) options.planner.tau_final = tau_final;
  }

  cc::ApproxTable table;
  const cc::ApproxTable* table_ptr = nullptr;
  if (cfg->heuristic_mode == cc::HeuristicMode::Hybrid) {
    cc::RSConfig rs_cfg;
    rs_cfg.turning_radius = inst.kinematics.turning_radius;
    rs_cfg.reverse_penalty = inst.kinematics.reverse_penalty;
    table = obtain_table(rs_cfg, table_path, /*allow_save=*/false);
    table_ptr = &table;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = cc::solve(inst, options, table_ptr);
  const double solve_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const bool solved = result.status == cc::SolveStatus::Solved;

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out.precision(17);
    out << "solved=" << (solved ? 1 : 0) << "\n"
        << "time_s=" << solve_seconds << "\n"
        << "cost=" << (solved ? result.solution.cost : 0.0) << "\n"
        << "expansions=" << result.stats.low_level_expansions << "\n"
        << "cache_lookups=" << result.stats.cache.lookups << "\n"
        << "cache_hits=" << result.stats.cache.hits << "\n"
        << "cache_entries=" << result.stats.cache_entries << "\n"
        << "cache_bytes=" << result.stats.cache_bytes << "\n"
        << "evictions=" << result.stats.cache.evictions << "\n"
        << "high_level_nodes=" << result.stats.high_level_nodes << "\n"
        << "heuristic_calls=" << result.stats.heuristic_calls << "\n"
        << "exact_calls=" << result.stats.exact_calls << "\n"
        << "approx_calls=" << result.stats.approx_calls << "\n";
  } else {
    std::cout << (solved ? "solved" : "unsolved")
              << " cost=" << result.solution.cost
              << " expansions=" << result.stats.low_level_expansions
              << " hit_rate=" << result.stats.cache.hit_rate() << "\n";
  }
  if (solved && !solution_path.empty()) {
    cc::write_solution(result.solution, solution_path);
  }
  return solved ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent car-like / grid path-finding benchmark harness"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a random instance suite");
  cc::GenParams params;
  std::string out_dir = "suite";
  gen->add_option("--seed", params.seed, "RNG seed");
  gen->add_option("--out", out_dir, "Output directory");
  gen->add_option("--map-size", params.map_size, "Square map side length");
  gen->add_option("--agents", params.agents, "Agents per instance");
  gen->add_option("--density", params.density, "Obstacle area fraction [0,1)");
  gen->add_option("--count", params.count, "Instances to generate");
  gen->callback([&] {
    const auto files = cc::generate_suite(params, out_dir);
    std::cout << "wrote " << files.size() << " instances to " << out_dir
              << "\n";
  });

  // run
  auto* run = app.add_subcommand("run", "Run a suite across configurations");
  std::string suite_dir;
  std::vector<std::string> configs = {"baseline", "carchase"};
  double run_timeout = 30.0;
  int jobs = 1;
  std::string run_csv = "results.csv";
  bool run_verbose = false;
  run->add_option("--suite", suite_dir, "Suite directory")->required();
  run->add_option("--configs", configs, "Configuration names")->delimiter(',');
  run->add_option("--timeout", run_timeout, "Per-instance timeout (s)");
  run->add_option("--jobs", jobs, "Parallel worker processes");
  run->add_option("--out", run_csv, "Output CSV path");
  run->add_flag("--verbose", run_verbose, "Progress lines to stderr");
  run->callback([&] {
    cc::RunOptions options;
    options.configs = configs;
    options.timeout_seconds = run_timeout;
    options.jobs = jobs;
    options.solver_exe = argv[0];
    options.verbose = run_verbose;
    bool any_hybrid = false;
    for (const auto& c : configs) {
      const auto b = cc::named_config(c);
      if (b && b->heuristic_mode == cc::HeuristicMode::Hybrid)
        any_hybrid = true;
    }
    if (any_hybrid) {
      // Build the distance table once up front; children load it. A
      // child whose instance kinematics differ just rebuilds its own.
      cc::RSConfig rs_cfg;
      rs_cfg.turning_radius = cc::Kinematics{}.turning_radius;
      rs_cfg.reverse_penalty = cc::Kinematics{}.reverse_penalty;
      options.table_path = suite_dir + "/rs_table.bin";
      obtain_table(rs_cfg, options.table_path, /*allow_save=*/true);
    }
    const auto records = cc::run_suite(suite_dir, options, run_csv);
    std::cout << "wrote " << records.size() << " rows to " << run_csv << "\n";
  });

  // summarize
  auto* sum = app.add_subcommand("summarize", "Summarize a results CSV");
  std::string csv_path, base_cfg = "baseline", test_cfg = "carchase";
  std::string summary_out;
  sum->add_option("--csv", csv_path, "Results CSV")->required();
  sum->add_option("--base", base_cfg, "Baseline configuration");
  sum->add_option("--test", test_cfg, "Test configuration");
  sum->add_option("--out", summary_out,
                  "Write the table here (plot data goes to <out>.plot)");
  sum->callback([&] {
    const auto records = cc::load_csv(csv_path);
    const auto summary = cc::summarize(records, base_cfg, test_cfg);
    cc::write_summary_table(summary, std::cout);
    if (!summary_out.empty()) {
      std::ofstream out(summary_out);
      cc::write_summary_table(summary, out);
      cc::write_plot_data(summary, summary_out + ".plot");
    }
  });

  // solve (also the subprocess entry point used by `run`)
  auto* solve = app.add_subcommand("solve", "Solve one car-like instance");
  std::string instance_path, config_name = "carchase";
  double solve_timeout = 30.0;
  std::string result_out, table_path, solution_path;
  solve->add_option("--instance", instance_path, "Instance file")->required();
  solve->add_option("--config", config_name, "Configuration name");
  solve->add_option("--timeout", solve_timeout, "Timeout (s)");
  solve->add_option("--out", result_out, "Result record file (key=value)");
  solve->add_option("--table", table_path, "Distance table file");
  solve->add_option("--solution", solution_path, "Write solution here");
  std::size_t solve_capacity = cc::ConflictAwareCache::kDefaultCapacity;
  int solve_t_window = -1;
  solve->add_option("--capacity", solve_capacity, "Cache entry capacity");
  solve->add_option("--t-window", solve_t_window,
                    "Relevance time window override (timesteps)");
  double solve_tau_init = -1, solve_tau_final = -1;
  solve->add_option("--tau-init", solve_tau_init,
                    "Hybrid switch initial threshold override (m)");
  solve->add_option("--tau-final", solve_tau_final,
                    "Hybrid switch final threshold override (m)");
  int solve_rc = 0;
  solve->callback([&] {
    solve_rc = cmd_solve(instance_path, config_name, solve_timeout, result_out,
                         table_path, solution_path, solve_capacity,
                         solve_t_window, solve_tau_init, solve_tau_final);
  });

  // solve-grid
  auto* sgrid = app.add_subcommand("solve-grid", "Solve one grid instance");
  std::string grid_path;
  double grid_timeout = 30.0;
  bool grid_no_cache = false;
  sgrid->add_option("--instance", grid_path, "Grid instance file")->required();
  sgrid->add_option("--timeout", grid_timeout, "Timeout (s)");
  sgrid->add_flag("--no-cache", grid_no_cache, "Disable the heuristic cache");
  sgrid->callback([&] {
    const auto inst = cc::load_grid_instance(grid_path);
    cc::GridSolveOptions options;
    options.timeout_seconds = grid_timeout;
    options.use_cache = !grid_no_cache;
    const auto result = cc::grid_cbs_solve(inst, options);
    const bool solved = result.status == cc::GridSolveStatus::Solved;
    std::cout << (solved ? "solved" : "unsolved") << " cost=" << result.cost
              << " high_level_nodes=" << result.high_level_nodes
              << " hit_rate=" << result.cache_stats.hit_rate() << "\n";
    solve_rc = solved ? 0 : 1;
  });

  // table
  auto* tbl = app.add_subcommand("table", "Build the distance table");
  std::string tbl_out = "rs_table.bin";
  double turning_radius = cc::Kinematics{}.turning_radius;
  double reverse_penalty = cc::Kinematics{}.reverse_penalty;
  tbl->add_option("--out", tbl_out, "Output file");
  tbl->add_option("--turning-radius", turning_radius, "Turning radius");
  tbl->add_option("--reverse-penalty", reverse_penalty, "Reverse penalty");
  tbl->callback([&] {
    cc::RSConfig cfg;
    cfg.turning_radius = turning_radius;
    cfg.reverse_penalty = reverse_penalty;
    cc::TableSpec spec;
    auto table = cc::ApproxTable::build(cfg, spec);
    const double eps = table.measure_epsilon(120000, 12345);
    table.save(tbl_out);
    std::cout << "wrote " << tbl_out << " (epsilon=" << eps << ")\n";
  });

  CLI11_PARSE(app, argc, argv);
  return solve_rc;
}
