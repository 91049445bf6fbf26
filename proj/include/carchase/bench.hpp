#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carchase/cbs.hpp"

namespace carchase {

// Named flag bundles used across the CLI, the suite runner and the
// acceptance harness.
struct BenchConfig {
  CacheMode cache_mode = CacheMode::Off;
  HeuristicMode heuristic_mode = HeuristicMode::Exact;
};

// baseline: cache off + exact. cached: conflict-aware cache + exact.
// carchase: conflict-aware cache + hybrid. stateonly: per-call-flushed
// state-keyed cache + hybrid — the control that isolates what the
// constraint-aware keying adds over plain per-search memoization.
std::optional<BenchConfig> named_config(const std::string& name);
std::vector<std::string> config_names();

struct GenParams {
  std::uint64_t seed = 1;
  double map_size = 25.0;  // square maps
  int agents = 4;
  double density = 0.0;  // obstacle area fraction
  int count = 10;
};

// Writes `count` instance files into out_dir, deterministic from the
// seed. Starts and goals are obstacle-free and pairwise separated by at
// least two footprint diameters. Throws on placement failure.
std::vector<std::string> generate_suite(const GenParams& params,
                                        const std::string& out_dir);

struct RunRecord {
  std::string instance;
  std::string config;
  bool solved = false;
  double wall_time_s = 0;
  double cost = 0;
  std::uint64_t expansions = 0;
  std::uint64_t cache_lookups = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_entries = 0;
  std::uint64_t cache_bytes = 0;
  std::uint64_t evictions = 0;
};

extern const char kCsvHeader[];
std::string to_csv_row(const RunRecord& r);
std::vector<RunRecord> load_csv(const std::string& path);

struct RunOptions {
  std::vector<std::string> configs;
  double timeout_seconds = 30.0;
  int jobs = 1;
  // Binary invoked as `<solver_exe> solve --instance I --config C
  // --timeout T --json OUT` in a child process per run, so one bad
  // instance cannot take the suite down.
  std::string solver_exe;
  // Optional prebuilt distance table passed through to hybrid children
  // so every subprocess does not rebuild it.
  std::string table_path;
  bool verbose = false;
};

// Runs every (instance, config) pair and appends rows to out_csv,
// flushing after each row. Returns the records.
std::vector<RunRecord> run_suite(const std::string& suite_dir,
                                 const RunOptions& options,
                                 const std::string& out_csv);

struct SuiteSummary {
  std::string base_config, test_config;
  int base_total = 0, test_total = 0;
  int base_solved = 0, test_solved = 0;
  double base_success_rate = 0, test_success_rate = 0;  // percent
  // Averages over each config's own solved set and over the mutual set;
  // the mutual set is what the speedup is defined on.
  double base_avg_time_own = 0, test_avg_time_own = 0;
  double base_avg_time_mutual = 0, test_avg_time_mutual = 0;
  int mutual_count = 0;
  bool speedup_available = false;
  double geometric_mean_speedup = 0;
  int base_unsolved = 0, test_unsolved = 0;
  double total_runtime_s = 0;
  // Plot data: geometric-mean speedup grouped by agent count (parsed
  // from the instance file name pattern "_a<N>_").
  std::vector<std::pair<int, double>> speedup_by_agents;
};

SuiteSummary summarize(const std::vector<RunRecord>& records,
                       const std::string& base_config,
                       const std::string& test_config);

void write_summary_table(const SuiteSummary& s, std::ostream& out);
void write_plot_data(const SuiteSummary& s, const std::string& path);

// Agent count parsed from an instance id ("_a8_" -> 8); -1 if absent.
int agents_from_instance_name(const std::string& name);

}  // namespace carchase
