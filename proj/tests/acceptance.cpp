// Acceptance harness: exercises the eleven release criteria end to end
// and prints one PASS/FAIL line per criterion. Exit code 0 iff all pass.
//
// Usage: acceptance <bench-cli binary> [scratch dir]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "carchase/bench.hpp"
#include "carchase/cbs.hpp"
#include "carchase/grid.hpp"
#include "oracles.hpp"

namespace cc = carchase;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int g_criterion = 0;
bool g_all_pass = true;

void report(const std::string& name, const Outcome& o) {
  ++g_criterion;
  std::cout << "criterion " << g_criterion << " (" << name
            << "): " << (o.pass ? "PASS" : "FAIL");
  if (!o.detail.empty()) std::cout << " — " << o.detail;
  std::cout << std::endl;
  g_all_pass = g_all_pass && o.pass;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------- grids

cc::GridInstance random_board(std::mt19937_64& rng, int min_dim, int max_dim,
                              int max_agents, double density) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  for (;;) {
    cc::GridInstance inst;
    inst.width = dim(rng);
    inst.height = dim(rng);
    std::uniform_int_distribution<int> col(0, inst.width - 1);
    std::uniform_int_distribution<int> row(0, inst.height - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int r = 0; r < inst.height; ++r) {
      for (int c = 0; c < inst.width; ++c) {
        if (coin(rng) < density) inst.obstacles.push_back({r, c});
      }
    }
    std::uniform_int_distribution<int> na(1, max_agents);
    const int agents = na(rng);
    std::set<std::pair<int, int>> starts, goals;
    bool ok = true;
    for (int a = 0; a < agents && ok; ++a) {
      cc::GridTask task;
      int tries = 0;
      do {
        task.start = {row(rng), col(rng)};
        if (++tries > 200) break;
      } while (inst.blocked(task.start) ||
               starts.count({task.start.row, task.start.col}));
      tries = 0;
      do {
        task.goal = {row(rng), col(rng)};
        if (++tries > 200) break;
      } while (inst.blocked(task.goal) ||
               goals.count({task.goal.row, task.goal.col}));
      if (inst.blocked(task.start) || inst.blocked(task.goal) ||
          starts.count({task.start.row, task.start.col}) ||
          goals.count({task.goal.row, task.goal.col})) {
        ok = false;
        break;
      }
      starts.insert({task.start.row, task.start.col});
      goals.insert({task.goal.row, task.goal.col});
      inst.agents.push_back(task);
    }
    if (ok && !inst.agents.empty()) return inst;
  }
}

cc::GridConstraintList random_constraints(std::mt19937_64& rng,
                                          const cc::GridInstance& inst,
                                          int count, int max_time) {
  std::uniform_int_distribution<int> col(0, inst.width - 1);
  std::uniform_int_distribution<int> row(0, inst.height - 1);
  std::uniform_int_distribution<int> when(1, max_time);
  std::uniform_int_distribution<int> kind(0, 3);
  cc::GridConstraintList out;
  for (int i = 0; i < count; ++i) {
    cc::GridConstraint c;
    c.id = static_cast<std::uint32_t>(i);
    c.agent = 0;
    c.cell = {row(rng), col(rng)};
    c.time = when(rng);
    if (kind(rng) == 0) {
      c.is_edge = true;
      cc::GridCell to = c.cell;
      switch (kind(rng)) {
        case 0: to.row += 1; break;
        case 1: to.row -= 1; break;
        case 2: to.col += 1; break;
        default: to.col -= 1; break;
      }
      if (!inst.in_bounds(to)) continue;
      c.to = to;
    }
    out.push_back(c);
  }
  return out;
}

// Criterion 1: grid CBS cost equals the joint-space brute-force optimum.
Outcome criterion_oracle_correctness() {
  std::mt19937_64 rng(20260826);
  int checked = 0;
  for (int n = 0; n < 200; ++n) {
    const auto inst = random_board(rng, 4, 6, 3, 0.15);
    const int oracle = oracles::joint_optimal_cost(inst);
    cc::GridSolveOptions opt;
    opt.timeout_seconds = 30.0;
    const auto res = cc::grid_cbs_solve(inst, opt);
    if (oracle < 0) {
      if (res.status == cc::GridSolveStatus::Solved) {
        return {false, "solver found a solution the oracle says cannot exist"};
      }
    } else {
      if (res.status != cc::GridSolveStatus::Solved || res.cost != oracle) {
        return {false, "cost mismatch on board " + std::to_string(n) +
                           ": solver " + std::to_string(res.cost) +
                           " vs oracle " + std::to_string(oracle)};
      }
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " boards match the joint oracle"};
}

// Criterion 2: exact-mode solve costs are bit-identical with the
// conflict-aware cache on vs off, car-like and grid.
Outcome criterion_transparency(const std::string& scratch) {
  // Car-like half.
  cc::GenParams params;
  params.seed = 7;
  params.map_size = 25.0;
  params.agents = 4;
  params.density = 0.10;
  params.count = 100;
  const std::string dir = scratch + "/transparency";
  const auto files = cc::generate_suite(params, dir);
  int solved = 0;
  for (const auto& f : files) {
    const auto inst = cc::load_instance(f);
    cc::SolveOptions off, on;
    off.timeout_seconds = on.timeout_seconds = 30.0;
    off.planner.heuristic_mode = cc::HeuristicMode::Exact;
    on.planner.heuristic_mode = cc::HeuristicMode::Exact;
    off.planner.cache_mode = cc::CacheMode::Off;
    on.planner.cache_mode = cc::CacheMode::ConflictAware;
    const auto a = cc::solve(inst, off);
    const auto b = cc::solve(inst, on);
    // Timeout asymmetry near the deadline is a timing artifact, not a
    // transparency violation; Solved vs NoSolution would be one.
    if ((a.status == cc::SolveStatus::Solved &&
         b.status == cc::SolveStatus::NoSolution) ||
        (b.status == cc::SolveStatus::Solved &&
         a.status == cc::SolveStatus::NoSolution)) {
      return {false, "solvability diverged on " + f};
    }
    if (a.status == cc::SolveStatus::Solved &&
        b.status == cc::SolveStatus::Solved) {
      if (a.solution.cost != b.solution.cost) {
        return {false, "cost diverged on " + f + ": " +
                           std::to_string(a.solution.cost) + " vs " +
                           std::to_string(b.solution.cost)};
      }
      ++solved;
    }
  }
  // Grid half.
  std::mt19937_64 rng(99);
  int grid_solved = 0;
  for (int n = 0; n < 100; ++n) {
    const auto inst = random_board(rng, 6, 8, 3, 0.12);
    cc::GridSolveOptions off, on;
    off.timeout_seconds = on.timeout_seconds = 30.0;
    off.use_cache = false;
    on.use_cache = true;
    const auto a = cc::grid_cbs_solve(inst, off);
    const auto b = cc::grid_cbs_solve(inst, on);
    if ((a.status == cc::GridSolveStatus::Solved &&
         b.status == cc::GridSolveStatus::NoSolution) ||
        (b.status == cc::GridSolveStatus::Solved &&
         a.status == cc::GridSolveStatus::NoSolution)) {
      return {false, "grid solvability diverged"};
    }
    if (a.status == cc::GridSolveStatus::Solved &&
        b.status == cc::GridSolveStatus::Solved) {
      if (a.cost != b.cost) return {false, "grid cost diverged"};
      ++grid_solved;
    }
  }
  return {true, std::to_string(solved) + "/100 car-like and " +
                    std::to_string(grid_solved) +
                    "/100 grid instances solved, costs identical"};
}

// Criterion 3: cached grid heuristic never exceeds the oracle cost.
Outcome criterion_admissibility() {
  std::mt19937_64 rng(31337);
  cc::ConflictAwareCache cache;
  cc::GridRelevanceConfig cfg;
  int done = 0;
  for (int q = 0; q < 10000; ++q) {
    const auto inst = random_board(rng, 5, 9, 1, 0.15);
    const auto constraints = random_constraints(rng, inst, 8, 15);
    const cc::GridState s{inst.agents[0].start, 0};
    const cc::GridCell goal = inst.agents[0].goal;
    const int h = cc::grid_cached_h(inst, s, goal, constraints, cfg,
                                    static_cast<std::uint32_t>(q), cache);
    const int oracle = oracles::grid_shortest(inst, s, goal, constraints);
    if (h > oracle) {
      return {false, "heuristic " + std::to_string(h) + " exceeds oracle " +
                         std::to_string(oracle) + " on query " +
                         std::to_string(q)};
    }
    ++done;
  }
  return {true, std::to_string(done) + " queries, zero violations"};
}

// Criterion 4: a constraint whose removal changes the base heuristic
// must appear in the fingerprint.
Outcome criterion_conservative_filter() {
  std::mt19937_64 rng(4242);
  cc::GridRelevanceConfig cfg;
  int affecting = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = random_board(rng, 5, 8, 1, 0.10);
    const cc::GridState s{inst.agents[0].start, 0};
    const cc::GridCell goal = inst.agents[0].goal;
    auto constraints = random_constraints(rng, inst, 6, 12);
    if (constraints.empty()) continue;
    const int h_all = cc::grid_base_h(inst, s, goal, constraints);
    std::uniform_int_distribution<std::size_t> pick(0, constraints.size() - 1);
    const std::size_t idx = pick(rng);
    const cc::GridConstraint removed = constraints[idx];
    cc::GridConstraintList rest = constraints;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
    const int h_rest = cc::grid_base_h(inst, s, goal, rest);
    if (h_all != h_rest) {
      ++affecting;
      const auto fp = cc::grid_relevance(s, goal, constraints, cfg);
      if (!fp.contains(removed.id)) {
        return {false,
                "cost-affecting constraint missing from fingerprint (trial " +
                    std::to_string(trial) + ")"};
      }
    }
  }
  return {true, std::to_string(affecting) +
                    " cost-affecting removals out of 1000, all fingerprinted"};
}

// Criterion 5: equal fingerprints imply equal base heuristic values.
Outcome criterion_fingerprint_sufficiency() {
  std::mt19937_64 rng(5555);
  cc::GridRelevanceConfig cfg;
  int pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inst = random_board(rng, 5, 8, 1, 0.10);
    const cc::GridState s{inst.agents[0].start, 0};
    const cc::GridCell goal = inst.agents[0].goal;
    auto base_set = random_constraints(rng, inst, 5, 10);
    int max_ct = 0;
    for (const auto& c : base_set) max_ct = std::max(max_ct, c.time + 1);
    // Padding constraints outside both the time window and the spatial
    // box, and beyond any reachable timestep of the base problem.
    cc::GridConstraintList padded = base_set;
    const int far_t = std::max(max_ct + inst.diameter(),
                               s.time + cfg.t_window + inst.diameter()) +
                      10;
    for (int k = 0; k < 3; ++k) {
      cc::GridConstraint c;
      c.id = static_cast<std::uint32_t>(100 + k);
      c.agent = 0;
      c.cell = {inst.height - 1, inst.width - 1};
      c.time = far_t + k;
      padded.push_back(c);
    }
    const auto fp_a = cc::grid_relevance(s, goal, base_set, cfg);
    const auto fp_b = cc::grid_relevance(s, goal, padded, cfg);
    if (!(fp_a == fp_b)) continue;  // construction missed; not a violation
    ++pairs;
    const int h_a = cc::grid_base_h(inst, s, goal, base_set);
    const int h_b = cc::grid_base_h(inst, s, goal, padded);
    if (h_a != h_b) {
      return {false, "equal fingerprints, different heuristic (trial " +
                         std::to_string(trial) + ")"};
    }
  }
  if (pairs < 1000) {
    return {false, "only " + std::to_string(pairs) + " usable pairs"};
  }
  return {true, std::to_string(pairs) + " equal-fingerprint pairs agree"};
}

// Criterion 7: approximation never exceeds (1 + eps + 0.01) x exact and
// is exact at table nodes.
Outcome criterion_approximation(const cc::ApproxTable& table) {
  const double bound = 1.0 + table.epsilon() + 0.01;
  std::mt19937_64 rng(777001);
  std::uniform_real_distribution<double> coord(0.0, 50.0);
  std::uniform_real_distribution<double> angle(0.0, cc::kTwoPi);
  for (int n = 0; n < 100000; ++n) {
    const cc::Pose from(coord(rng), coord(rng), angle(rng));
    const cc::Pose to(coord(rng), coord(rng), angle(rng));
    const double exact = cc::rs_exact(from, to, table.rs_config());
    if (exact < 1e-9) continue;
    const double approx = cc::rs_approx(from, to, table);
    if (approx > bound * exact) {
      return {false, "ratio " + fmt(approx / exact) + " beyond bound " +
                         fmt(bound)};
    }
  }
  const auto& spec = table.spec();
  std::uniform_int_distribution<int> ui(0, spec.nx - 1);
  std::uniform_int_distribution<int> uj(0, spec.ny - 1);
  std::uniform_int_distribution<int> uk(0, spec.ntheta - 1);
  for (int n = 0; n < 30000; ++n) {
    const int i = ui(rng), j = uj(rng), k = uk(rng);
    const cc::Pose from(0, 0, 0);
    const cc::Pose to(table.node_x(i), table.node_y(j), table.node_theta(k));
    const double approx = cc::rs_approx(from, to, table);
    if (approx != cc::rs_exact(from, to, table.rs_config())) {
      return {false, "node value not reproduced exactly"};
    }
  }
  return {true, "1e5 samples within 1+" + fmt(table.epsilon()) +
                    "+0.01, 3e4 nodes exact"};
}

// ------------------------------------------------------- suite plumbing

struct Cell {
  double map_size;
  int agents;
  int density_pct;

  std::string dir_name() const {
    return "cell_m" + std::to_string(static_cast<int>(map_size)) + "_a" +
           std::to_string(agents) + "_d" + std::to_string(density_pct);
  }
  std::string instance_prefix(std::uint64_t seed) const {
    return "m" + std::to_string(static_cast<int>(map_size)) + "_a" +
           std::to_string(agents) + "_d" + std::to_string(density_pct) + "_s" +
           std::to_string(seed) + "_";
  }
};

constexpr std::uint64_t kSuiteSeed = 1;
constexpr int kPerCell = 3;
constexpr double kSuiteTimeout = 40.0;

std::vector<Cell> suite_cells() {
  std::vector<Cell> cells;
  for (double m : {25.0, 50.0}) {
    for (int a : {4, 8, 12}) {
      for (int d : {0, 20}) cells.push_back({m, a, d});
    }
  }
  return cells;
}

struct SuiteData {
  std::vector<cc::RunRecord> records;
  std::map<std::string, std::vector<cc::RunRecord>> by_cell;  // dir name
  std::string error;
};

SuiteData run_desk_suite(const std::string& solver, const std::string& scratch,
                         const std::string& table_path) {
  SuiteData data;
  for (const auto& cell : suite_cells()) {
    const std::string dir = scratch + "/" + cell.dir_name();
    cc::GenParams params;
    params.seed = kSuiteSeed;
    params.map_size = cell.map_size;
    params.agents = cell.agents;
    params.density = cell.density_pct / 100.0;
    params.count = kPerCell;
    cc::generate_suite(params, dir);
    cc::RunOptions options;
    options.configs = {"baseline", "carchase", "stateonly"};
    options.timeout_seconds = kSuiteTimeout;
    options.solver_exe = solver;
    options.table_path = table_path;
    const auto records =
        cc::run_suite(dir, options, scratch + "/" + cell.dir_name() + ".csv");
    data.by_cell[cell.dir_name()] = records;
    data.records.insert(data.records.end(), records.begin(), records.end());
    std::cerr << "[acceptance] suite cell " << cell.dir_name() << ": "
              << records.size() << " runs" << std::endl;
  }
  return data;
}

// Criterion 6: hybrid cost within (1 + eps + 0.01) of exact cost.
Outcome criterion_hybrid_bound(const SuiteData& suite, double epsilon) {
  const double bound = 1.0 + epsilon + 0.01;
  std::map<std::string, const cc::RunRecord*> exact_rows;
  for (const auto& r : suite.records) {
    if (r.config == "baseline" && r.solved) exact_rows[r.instance] = &r;
  }
  int compared = 0;
  for (const auto& r : suite.records) {
    if (r.config != "carchase" || !r.solved) continue;
    const auto it = exact_rows.find(r.instance);
    if (it == exact_rows.end()) continue;
    ++compared;
    if (r.cost > bound * it->second->cost) {
      return {false, r.instance + ": hybrid cost " + fmt(r.cost) +
                         " exceeds " + fmt(bound) + " x exact " +
                         fmt(it->second->cost)};
    }
  }
  if (compared == 0) return {false, "no mutually solved instances"};
  return {true, std::to_string(compared) +
                    " mutually solved instances within bound " + fmt(bound)};
}

double aggregate_hit_rate(const std::vector<cc::RunRecord>& rows,
                          const std::string& config) {
  std::uint64_t hits = 0, lookups = 0;
  for (const auto& r : rows) {
    if (r.config != config) continue;
    hits += r.cache_hits;
    lookups += r.cache_lookups;
  }
  return lookups ? static_cast<double>(hits) / static_cast<double>(lookups)
                 : 0.0;
}

// Criterion 8: hardest-cell hit rate >= 60% and above the state-only
// control.
Outcome criterion_hit_rate(const SuiteData& suite) {
  const auto it = suite.by_cell.find("cell_m50_a12_d20");
  if (it == suite.by_cell.end()) return {false, "hardest cell missing"};
  const double ca = aggregate_hit_rate(it->second, "carchase");
  const double control = aggregate_hit_rate(it->second, "stateonly");
  const bool pass = ca >= 0.60 && ca > control;
  return {pass, "conflict-aware " + fmt(100 * ca) + "% vs state-only control " +
                    fmt(100 * control) + "%"};
}

// Criterion 9: overall geometric-mean speedup >= 1.5x and the hardest
// cell speeds up at least as much as the easiest.
Outcome criterion_speedup(const SuiteData& suite) {
  const auto overall = cc::summarize(suite.records, "baseline", "carchase");
  if (!overall.speedup_available) return {false, "no mutual solved set"};
  const auto hard_it = suite.by_cell.find("cell_m50_a12_d20");
  const auto easy_it = suite.by_cell.find("cell_m25_a4_d0");
  if (hard_it == suite.by_cell.end() || easy_it == suite.by_cell.end()) {
    return {false, "cells missing"};
  }
  const auto hard = cc::summarize(hard_it->second, "baseline", "carchase");
  const auto easy = cc::summarize(easy_it->second, "baseline", "carchase");
  if (!hard.speedup_available || !easy.speedup_available) {
    return {false, "cell speedup unavailable"};
  }
  const bool pass = overall.geometric_mean_speedup >= 1.5 &&
                    hard.geometric_mean_speedup >= easy.geometric_mean_speedup;
  return {pass, "overall " + fmt(overall.geometric_mean_speedup) +
                    "x, hardest " + fmt(hard.geometric_mean_speedup) +
                    "x, easiest " + fmt(easy.geometric_mean_speedup) + "x"};
}

// Criterion 10: entry counts within capacity; analytic bytes per entry
// average <= 200 on the hardest cell.
Outcome criterion_cache_bounds(const SuiteData& suite) {
  for (const auto& r : suite.records) {
    if (r.cache_entries > cc::ConflictAwareCache::kDefaultCapacity) {
      return {false, r.instance + "/" + r.config + ": " +
                         std::to_string(r.cache_entries) + " entries"};
    }
  }
  const auto it = suite.by_cell.find("cell_m50_a12_d20");
  if (it == suite.by_cell.end()) return {false, "hardest cell missing"};
  std::uint64_t bytes = 0, entries = 0;
  for (const auto& r : it->second) {
    if (r.config != "carchase") continue;
    bytes += r.cache_bytes;
    entries += r.cache_entries;
  }
  if (entries == 0) return {false, "no cache entries recorded"};
  const double avg = static_cast<double>(bytes) / static_cast<double>(entries);
  return {avg <= 200.0, "avg " + fmt(avg) + " bytes/entry on hardest cell"};
}

// Criterion 11: rerunning a cell with identical seeds and flags
// reproduces every CSV field except wall time.
Outcome criterion_determinism(const std::string& solver,
                              const std::string& scratch,
                              const std::string& table_path,
                              const SuiteData& suite) {
  const Cell cell{25.0, 8, 20};
  const auto it = suite.by_cell.find(cell.dir_name());
  if (it == suite.by_cell.end()) return {false, "replay cell missing"};

  const std::string dir = scratch + "/replay";
  cc::GenParams params;
  params.seed = kSuiteSeed;
  params.map_size = cell.map_size;
  params.agents = cell.agents;
  params.density = cell.density_pct / 100.0;
  params.count = kPerCell;
  cc::generate_suite(params, dir);
  cc::RunOptions options;
  options.configs = {"baseline", "carchase", "stateonly"};
  options.timeout_seconds = kSuiteTimeout;
  options.solver_exe = solver;
  options.table_path = table_path;
  const auto replay = cc::run_suite(dir, options, scratch + "/replay.csv");

  if (replay.size() != it->second.size()) return {false, "row count differs"};
  auto key = [](const cc::RunRecord& r) { return r.instance + "/" + r.config; };
  std::map<std::string, const cc::RunRecord*> first;
  for (const auto& r : it->second) first[key(r)] = &r;
  for (const auto& r : replay) {
    const auto f = first.find(key(r));
    if (f == first.end()) return {false, "row set differs"};
    const cc::RunRecord& a = *f->second;
    if (a.solved != r.solved || a.cost != r.cost ||
        a.expansions != r.expansions || a.cache_lookups != r.cache_lookups ||
        a.cache_hits != r.cache_hits || a.cache_entries != r.cache_entries ||
        a.cache_bytes != r.cache_bytes || a.evictions != r.evictions) {
      return {false, "mismatch on " + key(r)};
    }
  }
  return {true, std::to_string(replay.size()) +
                    " replayed rows identical outside wall_time"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <bench-cli binary> [scratch dir]"
              << std::endl;
    return 2;
  }
  const std::string solver = argv[1];
  std::string scratch;
  if (argc > 2) {
    scratch = argv[2];
  } else {
    scratch = (fs::temp_directory_path() / "acceptance_scratch").string();
  }
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  // Shared distance table: built once, loaded by every hybrid child.
  const std::string table_path = scratch + "/rs_table.bin";
  cc::RSConfig rs_cfg;
  rs_cfg.turning_radius = cc::Kinematics{}.turning_radius;
  rs_cfg.reverse_penalty = cc::Kinematics{}.reverse_penalty;
  cc::TableSpec table_spec;
  cc::ApproxTable table;
  if (!cc::ApproxTable::load(table_path, rs_cfg, table_spec, table)) {
    std::cerr << "[acceptance] building distance table..." << std::endl;
    table = cc::ApproxTable::build(rs_cfg, table_spec);
    table.measure_epsilon(120000, 12345);
    table.save(table_path);
  }
  std::cerr << "[acceptance] epsilon_table = " << table.epsilon() << std::endl;

  report("grid cost equals joint oracle", criterion_oracle_correctness());
  report("caching transparency", criterion_transparency(scratch));
  report("heuristic admissibility", criterion_admissibility());
  report("conservative relevance filter", criterion_conservative_filter());
  report("fingerprint sufficiency", criterion_fingerprint_sufficiency());

  std::cerr << "[acceptance] running desk-scale suite..." << std::endl;
  const SuiteData suite = run_desk_suite(solver, scratch, table_path);

  report("hybrid suboptimality bound",
         criterion_hybrid_bound(suite, table.epsilon()));
  report("approximation quality", criterion_approximation(table));
  report("cache hit rate on hardest cell", criterion_hit_rate(suite));
  report("geometric-mean speedup", criterion_speedup(suite));
  report("cache memory bounds", criterion_cache_bounds(suite));
  report("suite determinism",
         criterion_determinism(solver, scratch, table_path, suite));

  std::cout << (g_all_pass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED")
            << std::endl;
  return g_all_pass ? 0 : 1;
}
