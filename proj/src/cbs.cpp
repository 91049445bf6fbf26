#include "carchase/cbs.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <memory>
#include <queue>
#include <vector>

namespace carchase {

namespace {

Pose pose_at(const Path& p, int t) {
  if (p.empty()) return Pose();
  const int t0 = p.front().time;
  if (t <= t0) return p.front().pose;
  const std::size_t idx = static_cast<std::size_t>(t - t0);
  if (idx >= p.size()) return p.back().pose;
  return p[idx].pose;
}

struct HighLevelNode {
  std::vector<ConstraintList> constraints;  // per agent
  std::vector<Path> paths;                  // per agent
  std::vector<double> path_costs;
  double cost = 0;
  int conflicts = 0;
  int id = 0;
};

struct NodeOrder {
  bool operator()(const std::shared_ptr<HighLevelNode>& a,
                  const std::shared_ptr<HighLevelNode>& b) const {
    if (a->cost != b->cost) return a->cost > b->cost;
    if (a->conflicts != b->conflicts) return a->conflicts > b->conflicts;
    return a->id > b->id;
  }
};

int count_conflicts(const Instance& inst, const std::vector<Path>& paths) {
  int max_t = 0, count = 0;
  for (const auto& p : paths) {
    if (!p.empty()) max_t = std::max(max_t, p.back().time);
  }
  const double min_sep = 2.0 * inst.footprint_radius;
  for (int t = 0; t <= max_t; ++t) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        if (position_distance(pose_at(paths[i], t), pose_at(paths[j], t)) <
            min_sep) {
          ++count;
        }
      }
    }
  }
  return count;
}

}  // namespace

std::optional<Conflict> detect_first_conflict(const Instance& instance,
                                              const std::vector<Path>& paths) {
  int max_t = 0;
  for (const auto& p : paths) {
    if (!p.empty()) max_t = std::max(max_t, p.back().time);
  }
  const double min_sep = 2.0 * instance.footprint_radius;
  for (int t = 0; t <= max_t; ++t) {
    for (std::size_t i = 0; i < paths.size(); ++i) {
      for (std::size_t j = i + 1; j < paths.size(); ++j) {
        const Pose a = pose_at(paths[i], t);
        const Pose b = pose_at(paths[j], t);
        if (position_distance(a, b) < min_sep) {
          Conflict c;
          c.agent_a = static_cast<int>(i);
          c.agent_b = static_cast<int>(j);
          c.time = t;
          c.location = {(a.x + b.x) / 2, (a.y + b.y) / 2};
          return c;
        }
      }
    }
  }
  return std::nullopt;
}

SolveResult solve(const Instance& instance, const SolveOptions& options,
                  const ApproxTable* table) {
  using Clock = std::chrono::steady_clock;
  const auto start_time = Clock::now();
  const auto deadline =
      start_time + std::chrono::duration_cast<Clock::duration>(
                       std::chrono::duration<double>(options.timeout_seconds));
  auto timed_out = [&] { return Clock::now() >= deadline; };

  SolveResult result;
  ConflictAwareCache cache(options.cache_capacity);
  ConflictAwareCache* cache_ptr =
      options.planner.cache_mode == CacheMode::Off ? nullptr : &cache;

  PlannerConfig planner = options.planner;
  planner.deadline = deadline;
  if (options.tune_for_map) {
    // Hybrid switch schedule scaled to the car: exact answers only
    // matter within a few turning radii of the goal, and a small exact
    // region keeps the cached working set hot across replans.
    planner.tau_init = 4.0 * instance.kinematics.turning_radius;
    planner.tau_final = 2.0 * instance.kinematics.turning_radius;
    // Desk-scale maps have short makespans; a window sized to the map
    // keeps fingerprints from absorbing every constraint in the run.
    planner.relevance.t_window = std::max(
        1, std::min(planner.relevance.t_window,
                    static_cast<int>((instance.width + instance.height) /
                                     (30.0 * instance.kinematics.step_length))));
  }

  std::uint32_t next_constraint_id = 0;
  int next_node_id = 0;
  const int num_agents = static_cast<int>(instance.num_agents());
  const int batch = std::max(1, options.batch_size);
  const double conflict_radius = 2.0 * instance.footprint_radius;
  const int park_horizon =
      static_cast<int>(4.0 * (instance.width + instance.height) /
                       instance.kinematics.step_length) +
      50;

  std::vector<Path> committed(static_cast<std::size_t>(num_agents));
  std::vector<double> committed_costs(static_cast<std::size_t>(num_agents), 0);

  auto record_stats = [&](SolveStats& stats) {
    stats.cache = cache.stats();
    stats.cache_entries = cache.size();
    stats.cache_bytes = cache.approx_bytes();
    stats.cache_avg_entry_bytes = cache.avg_entry_bytes();
    stats.constraints_generated = next_constraint_id;
  };

  auto plan = [&](int agent, const ConstraintList& constraints,
                  PlanResult& out) {
    out = plan_single(instance, agent, constraints, planner, cache_ptr, table);
    result.stats.low_level_expansions += out.stats.expansions;
    result.stats.heuristic_calls += out.stats.heuristic_calls;
    result.stats.exact_calls += out.stats.exact_calls;
    result.stats.approx_calls += out.stats.approx_calls;
    return out.status == PlanStatus::Success;
  };

  for (int batch_begin = 0; batch_begin < num_agents; batch_begin += batch) {
    const int batch_end = std::min(num_agents, batch_begin + batch);
    const std::vector<int> batch_agents = [&] {
      std::vector<int> v;
      for (int a = batch_begin; a < batch_end; ++a) v.push_back(a);
      return v;
    }();

    // Earlier batches become moving obstacles: one constraint disc per
    // timestep of each committed path, plus a parked tail.
    ConstraintList moving;
    for (int a = 0; a < batch_begin; ++a) {
      const Path& p = committed[static_cast<std::size_t>(a)];
      if (p.empty()) continue;
      for (const auto& st : p) {
        Constraint c;
        c.id = next_constraint_id++;
        c.agent = -1;  // applies to every agent planned against it
        c.center = st.pose.position();
        c.radius = conflict_radius;
        c.t_begin = std::max(0, st.time - 1);
        c.t_end = st.time + 1;
        moving.push_back(c);
      }
      Constraint tail;
      tail.id = next_constraint_id++;
      tail.agent = -1;
      tail.center = p.back().pose.position();
      tail.radius = conflict_radius;
      tail.t_begin = p.back().time;
      tail.t_end = p.back().time + park_horizon;
      moving.push_back(tail);
    }

    auto root = std::make_shared<HighLevelNode>();
    root->id = next_node_id++;
    root->constraints.assign(batch_agents.size(), moving);
    root->paths.resize(batch_agents.size());
    root->path_costs.resize(batch_agents.size());
    for (std::size_t k = 0; k < batch_agents.size(); ++k) {
      if (timed_out()) {
        result.status = SolveStatus::Timeout;
        record_stats(result.stats);
        return result;
      }
      PlanResult pr;
      if (!plan(batch_agents[k], root->constraints[k], pr)) {
        result.status = timed_out() ? SolveStatus::Timeout
                                    : SolveStatus::NoSolution;
        record_stats(result.stats);
        return result;
      }
      root->paths[k] = std::move(pr.path);
      root->path_costs[k] = pr.cost;
      root->cost += pr.cost;
    }
    root->conflicts = count_conflicts(instance, root->paths);

    std::priority_queue<std::shared_ptr<HighLevelNode>,
                        std::vector<std::shared_ptr<HighLevelNode>>, NodeOrder>
        open;
    open.push(root);
    bool batch_solved = false;
    int expanded = 0;

    while (!open.empty()) {
      if (timed_out()) {
        result.status = SolveStatus::Timeout;
        record_stats(result.stats);
        return result;
      }
      auto node = open.top();
      open.pop();
      ++result.stats.high_level_nodes;
      if (++expanded > options.max_high_level_nodes) break;

      if (options.verbose && expanded % 100 == 0) {
        std::cerr << "[cbs] tree=" << expanded << " cost=" << node->cost
                  << " hit_rate=" << cache.stats().hit_rate() << "\n";
      }

      auto conflict = detect_first_conflict(instance, node->paths);
      if (!conflict) {
        for (std::size_t k = 0; k < batch_agents.size(); ++k) {
          committed[static_cast<std::size_t>(batch_agents[k])] =
              node->paths[k];
          committed_costs[static_cast<std::size_t>(batch_agents[k])] =
              node->path_costs[k];
        }
        batch_solved = true;
        break;
      }

      // Two children: constrain each conflicting agent away from the
      // other's pose at the conflict time.
      for (int side = 0; side < 2; ++side) {
        const int constrained =
            side == 0 ? conflict->agent_a : conflict->agent_b;
        const int other = side == 0 ? conflict->agent_b : conflict->agent_a;
        const std::size_t ck = static_cast<std::size_t>(constrained);
        auto child = std::make_shared<HighLevelNode>(*node);
        child->id = next_node_id++;
        Constraint c;
        c.id = next_constraint_id++;
        c.agent = constrained;
        c.center =
            pose_at(node->paths[static_cast<std::size_t>(other)],
                    conflict->time)
                .position();
        c.radius = conflict_radius;
        c.t_begin = std::max(0, conflict->time - 1);
        c.t_end = conflict->time + 1;
        child->constraints[ck].push_back(c);

        PlanResult pr;
        if (!plan(constrained, child->constraints[ck], pr)) {
          continue;  // infeasible child pruned
        }
        child->cost -= child->path_costs[ck];
        child->paths[ck] = std::move(pr.path);
        child->path_costs[ck] = pr.cost;
        child->cost += pr.cost;
        child->conflicts = count_conflicts(instance, child->paths);
        open.push(child);
      }
    }

    if (!batch_solved) {
      result.status =
          timed_out() ? SolveStatus::Timeout : SolveStatus::NoSolution;
      record_stats(result.stats);
      return result;
    }
  }

  result.status = SolveStatus::Solved;
  result.solution.paths = committed;
  result.solution.cost = 0;
  for (double c : committed_costs) result.solution.cost += c;
  record_stats(result.stats);
  return result;
}

}  // namespace carchase
