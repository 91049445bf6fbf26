#pragma once

#include <chrono>
#include <optional>

#include "carchase/lowlevel.hpp"

namespace carchase {

struct Conflict {
  int agent_a = -1;
  int agent_b = -1;
  int time = 0;
  Point location;
};

struct SolveOptions {
  PlannerConfig planner;
  std::size_t cache_capacity = ConflictAwareCache::kDefaultCapacity;
  double timeout_seconds = 120.0;
  int batch_size = 20;
  int max_high_level_nodes = 50000;
  bool verbose = false;  // progress lines to stderr
  // Derive the hybrid switch schedule and relevance window from the map
  // dimensions; disable to use the planner values verbatim.
  bool tune_for_map = true;
};

struct SolveStats {
  CacheStats cache;
  std::uint64_t cache_entries = 0;
  std::uint64_t cache_bytes = 0;
  double cache_avg_entry_bytes = 0;
  std::uint64_t low_level_expansions = 0;
  std::uint64_t heuristic_calls = 0;
  std::uint64_t exact_calls = 0;
  std::uint64_t approx_calls = 0;
  int high_level_nodes = 0;
  std::uint32_t constraints_generated = 0;
};

enum class SolveStatus { Solved, Timeout, NoSolution };

struct SolveResult {
  SolveStatus status = SolveStatus::NoSolution;
  Solution solution;
  SolveStats stats;
};

// Conflict-based search over car-like agents. Agents are partitioned
// into fixed-order batches of batch_size; earlier batches' paths turn
// into moving-obstacle constraints for later batches.
SolveResult solve(const Instance& instance, const SolveOptions& options,
                  const ApproxTable* table = nullptr);

// Earliest-time body-disc conflict between paths (parked-at-end
// semantics); ties broken by lowest agent pair.
std::optional<Conflict> detect_first_conflict(const Instance& instance,
                                              const std::vector<Path>& paths);

}  // namespace carchase
