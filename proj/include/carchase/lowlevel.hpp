#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "carchase/cache.hpp"
#include "carchase/constraint.hpp"
#include "carchase/hybrid.hpp"
#include "carchase/instance.hpp"
#include "carchase/solution.hpp"

namespace carchase {

enum class HeuristicMode { Exact, Hybrid };
enum class CacheMode { Off, StateOnly, ConflictAware };

struct PlannerConfig {
  Resolution resolution;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  RelevanceConfig relevance;
  HeuristicMode heuristic_mode = HeuristicMode::Exact;
  CacheMode cache_mode = CacheMode::Off;
  double wait_cost_factor = 0.5;  // wait cost = factor * step_length
  int expansion_budget = 300000;
  // Hybrid schedule; estimated_max_g is set per call from the task.
  double tau_init = 25.0;
  double tau_final = 4.0;
};

struct PlanStats {
  std::uint64_t expansions = 0;
  std::uint64_t heuristic_calls = 0;
  std::uint64_t exact_calls = 0;
  std::uint64_t approx_calls = 0;
};

enum class PlanStatus { Success, NoPath, BudgetExceeded };

struct PlanResult {
  PlanStatus status = PlanStatus::NoPath;
  Path path;
  double cost = 0;
  PlanStats stats;
};

// Spatiotemporal hybrid-state A* for one agent under a constraint set.
// `cache` is the run-owned heuristic cache; required unless cache_mode
// is Off. `table` is required in Hybrid mode.
PlanResult plan_single(const Instance& instance, int agent,
                       const ConstraintList& constraints,
                       const PlannerConfig& config,
                       ConflictAwareCache* cache = nullptr,
                       const ApproxTable* table = nullptr);

}  // namespace carchase
