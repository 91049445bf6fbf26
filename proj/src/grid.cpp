#include "carchase/grid.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace carchase {

namespace {

constexpr GridCell kMoves[5] = {
    {0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};  // wait, up, down, left, right

int max_constraint_time(const GridConstraintList& constraints) {
  int m = 0;
  for (const auto& c : constraints) {
    m = std::max(m, c.time + (c.is_edge ? 1 : 0));
  }
  return m;
}

bool vertex_blocked(const GridConstraintList& constraints, const GridCell& c,
                    int t) {
  for (const auto& k : constraints) {
    if (!k.is_edge && k.time == t && k.cell == c) return true;
  }
  return false;
}

bool edge_blocked(const GridConstraintList& constraints, const GridCell& from,
                  const GridCell& to, int depart) {
  for (const auto& k : constraints) {
    if (k.is_edge && k.time == depart && k.cell == from && k.to == to)
      return true;
  }
  return false;
}

struct CellTime {
  GridCell cell;
  int time;
  bool operator==(const CellTime& o) const {
    return cell == o.cell && time == o.time;
  }
};

struct CellTimeHash {
  std::size_t operator()(const CellTime& ct) const {
    std::uint64_t h = hash_combine(0, static_cast<std::uint32_t>(ct.cell.row));
    h = hash_combine(h, static_cast<std::uint32_t>(ct.cell.col));
    h = hash_combine(h, static_cast<std::uint32_t>(ct.time));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

bool GridInstance::blocked(const GridCell& c) const {
  return std::find(obstacles.begin(), obstacles.end(), c) != obstacles.end();
}

int grid_base_h(const GridInstance& inst, const GridState& s,
                const GridCell& goal, const GridConstraintList& constraints) {
  if (!inst.in_bounds(s.cell) || inst.blocked(s.cell)) return kGridUnreachable;
  if (s.cell == goal && s.time >= max_constraint_time(constraints)) return 0;
  const int horizon = max_constraint_time(constraints) + inst.diameter() +
                      std::max(0, s.time);
  std::queue<CellTime> frontier;
  std::unordered_set<CellTime, CellTimeHash> seen;
  frontier.push({s.cell, s.time});
  seen.insert({s.cell, s.time});
  while (!frontier.empty()) {
    const CellTime cur = frontier.front();
    frontier.pop();
    if (cur.cell == goal) return cur.time - s.time;
    if (cur.time >= horizon) continue;
    for (const auto& mv : kMoves) {
      GridCell next{cur.cell.row + mv.row, cur.cell.col + mv.col};
      if (!inst.in_bounds(next) || inst.blocked(next)) continue;
      if (vertex_blocked(constraints, next, cur.time + 1)) continue;
      if (edge_blocked(constraints, cur.cell, next, cur.time)) continue;
      CellTime ct{next, cur.time + 1};
      if (seen.insert(ct).second) frontier.push(ct);
    }
  }
  return kGridUnreachable;
}

ConflictFingerprint grid_relevance(const GridState& s, const GridCell& goal,
                                   const GridConstraintList& constraints,
                                   const GridRelevanceConfig& cfg) {
  const int row_lo = std::min(s.cell.row, goal.row);
  const int row_hi = std::max(s.cell.row, goal.row);
  const int col_lo = std::min(s.cell.col, goal.col);
  const int col_hi = std::max(s.cell.col, goal.col);
  auto box_distance = [&](const GridCell& c) {
    const int dr = std::max({row_lo - c.row, c.row - row_hi, 0});
    const int dc = std::max({col_lo - c.col, c.col - col_hi, 0});
    return dr + dc;
  };

  ConflictFingerprint::Builder builder;
  for (const auto& c : constraints) {
    if (std::abs(c.time - s.time) > cfg.t_window) continue;
    int d = box_distance(c.cell);
    if (c.is_edge) d = std::min(d, box_distance(c.to));
    if (d > cfg.tau_spatial) continue;
    ConflictFingerprint::SpatialSummary sp{static_cast<float>(c.cell.col),
                                           static_cast<float>(c.cell.row),
                                           0.5f};
    ConflictFingerprint::TemporalSummary tm{
        static_cast<std::uint16_t>(std::clamp(c.time, 0, 65535)),
        static_cast<std::uint16_t>(std::clamp(c.time, 0, 65535))};
    builder.add(c.id, sp, tm);
  }
  return builder.finish();
}

int grid_cached_h(const GridInstance& inst, const GridState& s,
                  const GridCell& goal, const GridConstraintList& constraints,
                  const GridRelevanceConfig& cfg, std::uint32_t context,
                  ConflictAwareCache& cache) {
  StateKey key;
  key.cell_x = s.cell.col;
  key.cell_y = s.cell.row;
  key.heading_bin = 0;
  key.time = s.time;
  const auto fp = grid_relevance(s, goal, constraints, cfg);
  const double v = cache.lookup_or_compute(context, key, fp, [&] {
    return static_cast<double>(grid_base_h(inst, s, goal, constraints));
  });
  return static_cast<int>(v);
}

namespace {

struct GridPlanItem {
  int f;
  int time;
  GridCell cell;
  int node;

  bool operator>(const GridPlanItem& o) const {
    if (f != o.f) return f > o.f;
    if (time != o.time) return time < o.time;  // deeper first
    if (cell.row != o.cell.row) return cell.row > o.cell.row;
    if (cell.col != o.cell.col) return cell.col > o.cell.col;
    return node > o.node;
  }
};

struct GridPlanNode {
  GridCell cell;
  int time;
  int parent;
};

// Time-expanded A*; cost = arrival time with the standard stay-at-goal
// rule (the agent must outlast the last vertex constraint on its goal).
std::optional<std::vector<GridCell>> plan_grid_single(
    const GridInstance& inst, int agent, const GridConstraintList& constraints,
    const GridSolveOptions& opts, ConflictAwareCache* cache) {
  const auto& task = inst.agents[static_cast<std::size_t>(agent)];
  int last_goal_constraint = -1;
  for (const auto& c : constraints) {
    if (!c.is_edge && c.cell == task.goal) {
      last_goal_constraint = std::max(last_goal_constraint, c.time);
    }
  }
  const int horizon = max_constraint_time(constraints) + inst.diameter() + 2;

  auto h = [&](const GridState& s) {
    if (cache) {
      return grid_cached_h(inst, s, task.goal, constraints, opts.relevance,
                           static_cast<std::uint32_t>(agent), *cache);
    }
    return grid_base_h(inst, s, task.goal, constraints);
  };

  std::vector<GridPlanNode> nodes;
  std::unordered_set<CellTime, CellTimeHash> closed;
  std::priority_queue<GridPlanItem, std::vector<GridPlanItem>, std::greater<>>
      open;

  auto push = [&](const GridCell& cell, int t, int parent) {
    const int hv = h(GridState{cell, t});
    if (hv >= kGridUnreachable) return;
    nodes.push_back({cell, t, parent});
    open.push({t + hv, t, cell, static_cast<int>(nodes.size()) - 1});
  };

  if (vertex_blocked(constraints, task.start, 0)) return std::nullopt;
  push(task.start, 0, -1);

  while (!open.empty()) {
    const GridPlanItem top = open.top();
    open.pop();
    const GridPlanNode node = nodes[static_cast<std::size_t>(top.node)];
    if (!closed.insert({node.cell, node.time}).second) continue;

    if (node.cell == task.goal && node.time > last_goal_constraint) {
      std::vector<GridCell> path;
      for (int i = top.node; i >= 0;
           i = nodes[static_cast<std::size_t>(i)].parent) {
        path.push_back(nodes[static_cast<std::size_t>(i)].cell);
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (node.time >= horizon) continue;
    for (const auto& mv : kMoves) {
      GridCell next{node.cell.row + mv.row, node.cell.col + mv.col};
      if (!inst.in_bounds(next) || inst.blocked(next)) continue;
      if (vertex_blocked(constraints, next, node.time + 1)) continue;
      if (edge_blocked(constraints, node.cell, next, node.time)) continue;
      if (closed.count({next, node.time + 1})) continue;
      push(next, node.time + 1, top.node);
    }
  }
  return std::nullopt;
}

GridCell cell_at(const std::vector<GridCell>& path, int t) {
  if (path.empty()) return GridCell{};
  if (t < 0) return path.front();
  if (t >= static_cast<int>(path.size())) return path.back();
  return path[static_cast<std::size_t>(t)];
}

struct GridConflict {
  bool is_edge = false;
  int agent_a = -1, agent_b = -1;
  int time = 0;       // vertex: occupancy time; edge: departure time
  GridCell cell;      // vertex cell, or agent_a's departure cell
  GridCell to;        // agent_a's arrival cell (edge only)
};

std::optional<GridConflict> first_grid_conflict(
    const std::vector<std::vector<GridCell>>& paths) {
  int max_t = 0;
  for (const auto& p : paths) {
    max_t = std::max(max_t, static_cast<int>(p.size()) - 1);
  }
  for (int t = 0; t <= max_t; ++t) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        if (cell_at(paths[i], t) == cell_at(paths[j], t)) {
          GridConflict c;
          c.agent_a = static_cast<int>(i);
          c.agent_b = static_cast<int>(j);
          c.time = t;
          c.cell = cell_at(paths[i], t);
          return c;
        }
      }
    }
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        if (cell_at(paths[i], t) == cell_at(paths[j], t + 1) &&
            cell_at(paths[i], t + 1) == cell_at(paths[j], t) &&
            !(cell_at(paths[i], t) == cell_at(paths[i], t + 1))) {
          GridConflict c;
          c.is_edge = true;
          c.agent_a = static_cast<int>(i);
          c.agent_b = static_cast<int>(j);
          c.time = t;
          c.cell = cell_at(paths[i], t);
          c.to = cell_at(paths[i], t + 1);
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

int path_cost(const std::vector<GridCell>& path) {
  return static_cast<int>(path.size()) - 1;
}

struct GridHighLevelNode {
  std::vector<GridConstraintList> constraints;
  std::vector<std::vector<GridCell>> paths;
  int cost = 0;
  int id = 0;
};

struct GridNodeOrder {
  bool operator()(const std::shared_ptr<GridHighLevelNode>& a,
                  const std::shared_ptr<GridHighLevelNode>& b) const {
    if (a->cost != b->cost) return a->cost > b->cost;
    return a->id > b->id;
  }
};

}  // namespace

GridSolveResult grid_cbs_solve(const GridInstance& inst,
                               const GridSolveOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(
                             options.timeout_seconds));

  GridSolveResult result;
  ConflictAwareCache cache(options.cache_capacity);
  ConflictAwareCache* cache_ptr = options.use_cache ? &cache : nullptr;
  const int n = static_cast<int>(inst.agents.size());
  std::uint32_t next_constraint_id = 0;
  int next_node_id = 0;

  auto finish = [&](GridSolveStatus status) {
    result.status = status;
    result.cache_stats = cache.stats();
    result.cache_entries = cache.size();
    return result;
  };

  auto root = std::make_shared<GridHighLevelNode>();
  root->id = next_node_id++;
  root->constraints.assign(static_cast<std::size_t>(n), {});
  root->paths.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    auto p = plan_grid_single(inst, a, root->constraints[static_cast<std::size_t>(a)],
                              options, cache_ptr);
    if (!p) return finish(GridSolveStatus::NoSolution);
    root->cost += path_cost(*p);
    root->paths[static_cast<std::size_t>(a)] = std::move(*p);
  }

  std::priority_queue<std::shared_ptr<GridHighLevelNode>,
                      std::vector<std::shared_ptr<GridHighLevelNode>>,
                      GridNodeOrder>
      open;
  open.push(root);
  int expanded = 0;

  while (!open.empty()) {
    if (Clock::now() >= deadline) return finish(GridSolveStatus::Timeout);
    auto node = open.top();
    open.pop();
    ++result.high_level_nodes;
    if (++expanded > options.max_high_level_nodes) break;

    auto conflict = first_grid_conflict(node->paths);
    if (!conflict) {
      result.paths = node->paths;
      result.cost = node->cost;
      return finish(GridSolveStatus::Solved);
    }

    for (int side = 0; side < 2; ++side) {
      const int agent = side == 0 ? conflict->agent_a : conflict->agent_b;
      const std::size_t ak = static_cast<std::size_t>(agent);
      auto child = std::make_shared<GridHighLevelNode>(*node);
      child->id = next_node_id++;
      GridConstraint c;
      c.id = next_constraint_id++;
      c.agent = agent;
      if (conflict->is_edge) {
        c.is_edge = true;
        c.time = conflict->time;
        // Forbid this agent's direction of the swap.
        if (side == 0) {
          c.cell = conflict->cell;
          c.to = conflict->to;
        } else {
          c.cell = conflict->to;
          c.to = conflict->cell;
        }
      } else {
        c.cell = conflict->cell;
        c.time = conflict->time;
      }
      child->constraints[ak].push_back(c);
      auto p = plan_grid_single(inst, agent, child->constraints[ak], options,
                                cache_ptr);
      if (!p) continue;
      child->cost -= path_cost(child->paths[ak]);
      child->paths[ak] = std::move(*p);
      child->cost += path_cost(child->paths[ak]);
      open.push(child);
    }
  }
  return finish(Clock::now() >= deadline ? GridSolveStatus::Timeout
                                         : GridSolveStatus::NoSolution);
}

GridInstance load_grid_instance(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw std::runtime_error("cannot parse " + path + ": " + e.what());
  }
  if (!root["grid"] || !root["grid"].as<bool>()) {
    throw std::runtime_error(path + ": not a grid instance (missing grid tag)");
  }
  GridInstance inst;
  inst.width = root["map"]["dimensions"][0].as<int>();
  inst.height = root["map"]["dimensions"][1].as<int>();
  if (root["map"]["obstacles"]) {
    for (const auto& ob : root["map"]["obstacles"]) {
      inst.obstacles.push_back({ob[1].as<int>(), ob[0].as<int>()});
    }
  }
  for (const auto& a : root["agents"]) {
    GridTask t;
    t.start = {a["start"][1].as<int>(), a["start"][0].as<int>()};
    t.goal = {a["goal"][1].as<int>(), a["goal"][0].as<int>()};
    inst.agents.push_back(t);
  }
  for (const auto& t : inst.agents) {
    for (const auto& c : {t.start, t.goal}) {
      if (!inst.in_bounds(c) || inst.blocked(c)) {
        throw std::runtime_error(path + ": agent endpoint blocked or outside");
      }
    }
  }
  return inst;
}

void write_grid_instance(const GridInstance& inst, const std::string& path) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "grid" << YAML::Value << true;
  out << YAML::Key << "map" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dimensions" << YAML::Value << YAML::Flow
      << YAML::BeginSeq << inst.width << inst.height << YAML::EndSeq;
  out << YAML::Key << "obstacles" << YAML::Value << YAML::BeginSeq;
  for (const auto& ob : inst.obstacles) {
    out << YAML::Flow << YAML::BeginSeq << ob.col << ob.row << YAML::EndSeq;
  }
  out << YAML::EndSeq << YAML::EndMap;
  out << YAML::Key << "agents" << YAML::Value << YAML::BeginSeq;
  for (const auto& a : inst.agents) {
    out << YAML::BeginMap;
    out << YAML::Key << "start" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << a.start.col << a.start.row << YAML::EndSeq;
    out << YAML::Key << "goal" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << a.goal.col << a.goal.row << YAML::EndSeq;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << out.c_str() << "\n";
}

}  // namespace carchase
