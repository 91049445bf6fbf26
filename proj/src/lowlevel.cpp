#include "carchase/lowlevel.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace carchase {

namespace {

struct Node {
  TimedState state;
  StateKey key;
  double g = 0;
  double h = 0;
  int parent = -1;
};

struct OpenItem {
  double f;
  double g;
  StateKey key;
  int node;

  // Min-heap on f, then prefer larger g, then lexicographic key, then
  // insertion order. Deterministic given deterministic inputs.
  bool operator>(const OpenItem& o) const {
    if (f != o.f) return f > o.f;
    if (g != o.g) return g < o.g;
    if (key != o.key) return key > o.key;
    return node > o.node;
  }
};

struct Primitive {
  int steer;      // +1 left, 0 straight, -1 right
  int direction;  // +1 forward, -1 reverse
};

constexpr Primitive kPrimitives[6] = {{1, 1},  {0, 1},  {-1, 1},
                                      {1, -1}, {0, -1}, {-1, -1}};

Pose apply_primitive(const Pose& p, const Primitive& prim,
                     const Kinematics& kin) {
  const double step = kin.step_length * prim.direction;
  Pose out = p;
  if (prim.steer == 0) {
    out.x += step * std::cos(p.theta);
    out.y += step * std::sin(p.theta);
    return out;
  }
  const double r = kin.turning_radius;
  const double dth = prim.steer * step / r;
  const double theta1 = p.theta + dth;
  if (prim.steer > 0) {
    out.x += r * (std::sin(theta1) - std::sin(p.theta));
    out.y += r * (std::cos(p.theta) - std::cos(theta1));
  } else {
    out.x += r * (std::sin(p.theta) - std::sin(theta1));
    out.y += r * (std::cos(theta1) - std::cos(p.theta));
  }
  out.theta = normalize_angle(theta1);
  return out;
}

bool violates_any(const ConstraintList& constraints, const Point& p, int t) {
  for (const auto& c : constraints) {
    if (c.violates(p, t)) return true;
  }
  return false;
}

// Parked-at-goal feasibility: no constraint may cover the final pose at
// or after the arrival time.
bool park_blocked(const ConstraintList& constraints, const Point& p, int arrival) {
  for (const auto& c : constraints) {
    if (c.t_end >= arrival && distance(p, c.center) < c.radius) return true;
  }
  return false;
}

class HeuristicProvider {
 public:
  HeuristicProvider(const Instance& inst, int agent,
                    const ConstraintList& constraints,
                    const PlannerConfig& cfg, ConflictAwareCache* cache,
                    const ApproxTable* table, PlanStats& stats)
      : goal_(inst.agents[static_cast<std::size_t>(agent)].goal),
        index_(constraints),
        cfg_(cfg),
        cache_(cache),
        table_(table),
        agent_(static_cast<std::uint32_t>(agent)),
        stats_(stats) {
    rs_cfg_.turning_radius = inst.kinematics.turning_radius;
    rs_cfg_.reverse_penalty = inst.kinematics.reverse_penalty;
    const auto& task = inst.agents[static_cast<std::size_t>(agent)];
    hybrid_.tau_init = cfg.tau_init;
    hybrid_.tau_final = cfg.tau_final;
    hybrid_.estimated_max_g =
        std::max(1e-9, 2.0 * rs_exact(task.start, task.goal, rs_cfg_));
    if (cfg_.cache_mode == CacheMode::StateOnly && cache_) {
      // State-only control: valid only within one constraint context,
      // so the run-owned cache is flushed at every low-level call.
      cache_->clear();
    }
  }

  double operator()(const StateKey& key, double g_value) {
    ++stats_.heuristic_calls;
    // Heuristics are evaluated at the key's canonical state so the
    // value is a pure function of (key, constraint context) and caching
    // cannot perturb the search.
    const TimedState cs = canonical_state(key, cfg_.resolution);
    if (cfg_.heuristic_mode == HeuristicMode::Hybrid) {
      const double d = std::hypot(cs.pose.x - goal_.x, cs.pose.y - goal_.y);
      if (d > hybrid_threshold(g_value, hybrid_)) {
        // The approximate branch is already an O(1) table lookup; only
        // the exact computation below goes through the cache.
        ++stats_.approx_calls;
        return rs_approx(cs.pose, goal_, *table_);
      }
    }
    auto exact = [&] {
      ++stats_.exact_calls;
      return rs_exact(cs.pose, goal_, rs_cfg_);
    };
    switch (cfg_.cache_mode) {
      case CacheMode::Off:
        return exact();
      case CacheMode::StateOnly:
        return cache_->lookup_or_compute(agent_, key, empty_fp_, exact);
      case CacheMode::ConflictAware: {
        // The fingerprint is a pure function of the key within one
        // call, so it is extracted once per key.
        auto it = fp_by_key_.find(key);
        if (it == fp_by_key_.end()) {
          it = fp_by_key_
                   .emplace(key, extract_fingerprint(cs, goal_, index_,
                                                     cfg_.relevance))
                   .first;
        }
        return cache_->lookup_or_compute(agent_, key, it->second, exact);
      }
    }
    return 0;
  }

  const RSConfig& rs_config() const { return rs_cfg_; }

 private:
  Pose goal_;
  ConstraintIndex index_;
  const PlannerConfig& cfg_;
  ConflictAwareCache* cache_;
  const ApproxTable* table_;
  std::uint32_t agent_;
  PlanStats& stats_;
  RSConfig rs_cfg_;
  HybridConfig hybrid_;
  ConflictFingerprint empty_fp_;
  std::unordered_map<StateKey, ConflictFingerprint, StateKeyHash> fp_by_key_;
};

}  // namespace

PlanResult plan_single(const Instance& instance, int agent,
                       const ConstraintList& constraints,
                       const PlannerConfig& config, ConflictAwareCache* cache,
                       const ApproxTable* table) {
  if (agent < 0 || static_cast<std::size_t>(agent) >= instance.agents.size()) {
    throw std::out_of_range("agent index out of range");
  }
  if (config.cache_mode != CacheMode::Off && cache == nullptr) {
    throw std::invalid_argument("cache_mode requires a cache instance");
  }
  if (config.heuristic_mode == HeuristicMode::Hybrid && table == nullptr) {
    throw std::invalid_argument("hybrid mode requires an approximation table");
  }

  PlanResult result;
  const auto& task = instance.agents[static_cast<std::size_t>(agent)];
  const auto& kin = instance.kinematics;
  HeuristicProvider heuristic(instance, agent, constraints, config, cache,
                              table, result.stats);

  const StateKey goal_key =
      discretize(TimedState(task.goal, 0), config.resolution);
  const double margin = instance.footprint_radius;
  const double snap_radius = 2.0 * kin.turning_radius;

  std::vector<Node> nodes;
  std::unordered_map<StateKey, double, StateKeyHash> best_g;
  std::priority_queue<OpenItem, std::vector<OpenItem>, std::greater<>> open;

  auto push = [&](const TimedState& st, double g, int parent) {
    StateKey key = discretize(st, config.resolution);
    auto it = best_g.find(key);
    if (it != best_g.end() && it->second <= g + 1e-12) return;
    best_g[key] = g;
    Node n;
    n.state = st;
    n.key = key;
    n.g = g;
    n.h = heuristic(key, g);
    n.parent = parent;
    nodes.push_back(n);
    open.push({n.g + n.h, n.g, key, static_cast<int>(nodes.size()) - 1});
  };

  // Time horizon so that exhausting the open list (no-path) is decidable:
  // long enough to wait out every constraint and still cross the map.
  int max_constraint_t = 0;
  for (const auto& c : constraints) {
    max_constraint_t = std::max(max_constraint_t, c.t_end);
  }
  const int horizon =
      max_constraint_t +
      static_cast<int>(4.0 * (instance.width + instance.height) /
                       kin.step_length) +
      50;

  const TimedState start_state(task.start, 0);
  if (!instance.in_bounds(task.start.position(), margin) ||
      instance.hits_obstacle(task.start.position(), margin) ||
      violates_any(constraints, task.start.position(), 0)) {
    result.status = PlanStatus::NoPath;
    return result;
  }
  push(start_state, 0.0, -1);

  auto reconstruct = [&](int idx) {
    Path path;
    for (int i = idx; i >= 0; i = nodes[static_cast<std::size_t>(i)].parent) {
      path.push_back(nodes[static_cast<std::size_t>(i)].state);
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!open.empty()) {
    const OpenItem top = open.top();
    open.pop();
    const Node node = nodes[static_cast<std::size_t>(top.node)];
    auto bg = best_g.find(node.key);
    if (bg == best_g.end() || node.g > bg->second + 1e-12) continue;  // stale

    if (++result.stats.expansions >
        static_cast<std::uint64_t>(config.expansion_budget)) {
      result.status = PlanStatus::BudgetExceeded;
      return result;
    }
    if (config.deadline && (result.stats.expansions & 2047) == 0 &&
        std::chrono::steady_clock::now() >= *config.deadline) {
      result.status = PlanStatus::BudgetExceeded;
      return result;
    }

    // Goal tolerance: same cell and heading bin.
    if (node.key.cell_x == goal_key.cell_x &&
        node.key.cell_y == goal_key.cell_y &&
        node.key.heading_bin == goal_key.heading_bin &&
        !park_blocked(constraints, node.state.pose.position(), node.state.time)) {
      result.status = PlanStatus::Success;
      result.path = reconstruct(top.node);
      result.cost = node.g;
      return result;
    }

    // Analytic goal expansion: snap along the connecting RS word when
    // close and the word is collision- and constraint-free.
    if (rs_exact(node.state.pose, task.goal, heuristic.rs_config()) <
        snap_radius) {
      const RSPath word =
          rs_shortest(node.state.pose, task.goal, heuristic.rs_config());
      auto wps = rs_waypoints(node.state.pose, word, heuristic.rs_config(),
                              kin.step_length);
      bool clean = true;
      int t = node.state.time;
      for (const auto& wp : wps) {
        ++t;
        const Point p = wp.pose.position();
        if (!instance.in_bounds(p, margin) ||
            instance.hits_obstacle(p, margin) ||
            violates_any(constraints, p, t)) {
          clean = false;
          break;
        }
      }
      if (clean && !wps.empty() &&
          !park_blocked(constraints, task.goal.position(), t)) {
        result.status = PlanStatus::Success;
        result.path = reconstruct(top.node);
        double g = node.g;
        int tt = node.state.time;
        for (const auto& wp : wps) {
          g += wp.cost;
          result.path.emplace_back(wp.pose, ++tt);
        }
        result.cost = g;
        return result;
      }
    }

    // Successors: six motion primitives plus wait.
    const int t1 = node.state.time + 1;
    if (t1 > horizon) continue;
    for (const auto& prim : kPrimitives) {
      Pose next = apply_primitive(node.state.pose, prim, kin);
      const Point p = next.position();
      if (!instance.in_bounds(p, margin) || instance.hits_obstacle(p, margin) ||
          violates_any(constraints, p, t1)) {
        continue;
      }
      const double cost =
          kin.step_length * (prim.direction > 0 ? 1.0 : kin.reverse_penalty);
      push(TimedState(next, t1), node.g + cost, top.node);
    }
    if (!violates_any(constraints, node.state.pose.position(), t1)) {
      push(TimedState(node.state.pose, t1),
           node.g + config.wait_cost_factor * kin.step_length, top.node);
    }
  }

  result.status = PlanStatus::NoPath;
  return result;
}

}  // namespace carchase
