#pragma once

#include <string>
#include <vector>

#include "carchase/geometry.hpp"

namespace carchase {

struct ObstacleDisc {
  Point center;
  double radius = 1.0;
};

struct AgentTask {
  Pose start;
  Pose goal;
};

struct Kinematics {
  double turning_radius = 2.0;
  double step_length = 1.0;
  double reverse_penalty = 1.5;
};

// A car-like MAPF problem: rectangular workspace, disc obstacles, one
// start/goal pose per agent.
struct Instance {
  double width = 0;
  double height = 0;
  std::vector<ObstacleDisc> obstacles;
  std::vector<AgentTask> agents;
  Kinematics kinematics;
  double footprint_radius = 1.0;

  std::size_t num_agents() const { return agents.size(); }

  bool in_bounds(const Point& p, double margin) const {
    return p.x >= margin && p.y >= margin && p.x <= width - margin &&
           p.y <= height - margin;
  }

  bool hits_obstacle(const Point& p, double clearance) const {
    for (const auto& ob : obstacles) {
      if (distance(p, ob.center) < ob.radius + clearance) return true;
    }
    return false;
  }
};

// Throws std::runtime_error on parse failure or invariant violation
// (start/goal out of bounds or inside an obstacle).
Instance load_instance(const std::string& path, double obstacle_radius = 1.0);
void write_instance(const Instance& inst, const std::string& path);

// Validation used by load_instance; exposed for programmatically built
// instances. Returns human-readable problems, empty when valid.
std::vector<std::string> validate_instance(const Instance& inst);

}  // namespace carchase
