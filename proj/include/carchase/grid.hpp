#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "carchase/cache.hpp"
#include "carchase/fingerprint.hpp"

namespace carchase {

struct GridCell {
  int row = 0;
  int col = 0;
  auto operator<=>(const GridCell&) const = default;
};

struct GridState {
  GridCell cell;
  int time = 0;
};

// Vertex constraint: the agent may not occupy `cell` at `time`.
// Edge constraint: the agent may not move `cell` -> `to` departing at
// `time` (arriving at time + 1).
struct GridConstraint {
  std::uint32_t id = 0;
  int agent = -1;
  bool is_edge = false;
  GridCell cell;
  GridCell to;
  int time = 0;
};

using GridConstraintList = std::vector<GridConstraint>;

struct GridTask {
  GridCell start;
  GridCell goal;
};

struct GridInstance {
  int width = 0;   // columns
  int height = 0;  // rows
  std::vector<GridCell> obstacles;
  std::vector<GridTask> agents;

  bool in_bounds(const GridCell& c) const {
    return c.row >= 0 && c.row < height && c.col >= 0 && c.col < width;
  }
  bool blocked(const GridCell& c) const;
  // Upper bound on the graph diameter: with obstacles a shortest path
  // can be far longer than width + height, but never revisits a cell.
  int diameter() const { return width * height; }
};

GridInstance load_grid_instance(const std::string& path);
void write_grid_instance(const GridInstance& inst, const std::string& path);

inline constexpr int kGridUnreachable = 1 << 28;

// Constraint-respecting true distance: length of a shortest path in the
// time-expanded graph (4-connected moves + wait, unit costs) from
// (s.cell, s.time) to the goal cell. This is the deliberately expensive
// context-dependent base heuristic. Returns kGridUnreachable when the
// goal cannot be reached within the horizon
// (max constraint time + grid diameter).
int grid_base_h(const GridInstance& inst, const GridState& s,
                const GridCell& goal, const GridConstraintList& constraints);

struct GridRelevanceConfig {
  int t_window = 20;
  int tau_spatial = 5;  // cells, Manhattan distance to the s-g bounding box
};

// Grid relevance filter: time window plus Manhattan distance from the
// constraint cell to the state-goal bounding box.
ConflictFingerprint grid_relevance(const GridState& s, const GridCell& goal,
                                   const GridConstraintList& constraints,
                                   const GridRelevanceConfig& cfg);

// Cache-wrapped base heuristic; context disambiguates goals (CBS passes
// the agent index).
int grid_cached_h(const GridInstance& inst, const GridState& s,
                  const GridCell& goal, const GridConstraintList& constraints,
                  const GridRelevanceConfig& cfg, std::uint32_t context,
                  ConflictAwareCache& cache);

struct GridSolveOptions {
  bool use_cache = true;
  std::size_t cache_capacity = ConflictAwareCache::kDefaultCapacity;
  GridRelevanceConfig relevance;
  double timeout_seconds = 60.0;
  int max_high_level_nodes = 50000;
};

enum class GridSolveStatus { Solved, Timeout, NoSolution };

struct GridSolveResult {
  GridSolveStatus status = GridSolveStatus::NoSolution;
  std::vector<std::vector<GridCell>> paths;  // index = timestep
  int cost = 0;                              // sum of arrival times
  CacheStats cache_stats;
  std::uint64_t cache_entries = 0;
  int high_level_nodes = 0;
};

// Standard CBS with vertex/edge constraints, optimal sum of costs; the
// low level is time-expanded A* guided by the (optionally cached)
// constraint-respecting true-distance heuristic.
GridSolveResult grid_cbs_solve(const GridInstance& inst,
                               const GridSolveOptions& options);

}  // namespace carchase
