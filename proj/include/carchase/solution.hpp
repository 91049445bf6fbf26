#pragma once

#include <string>
#include <vector>

#include "carchase/geometry.hpp"
#include "carchase/instance.hpp"

namespace carchase {

// One agent's trajectory: consecutive timesteps starting at the
// agent's start time (0 for first-batch agents).
using Path = std::vector<TimedState>;

struct Solution {
  std::vector<Path> paths;  // one per agent, agent order
  double cost = 0;
};

void write_solution(const Solution& sol, const std::string& path);
Solution load_solution(const std::string& path);

// Independent solution checker: start/goal endpoints, per-step motion
// legality (arc of curvature 0 or +-1/turning_radius, length <=
// step_length, or wait), bounds, obstacle clearance, and pairwise agent
// separation at every timestep (parked-at-end semantics).
// Returns human-readable violations, empty when the solution is valid.
std::vector<std::string> validate_solution(const Instance& inst,
                                           const Solution& sol,
                                           double goal_pos_tol,
                                           double goal_theta_tol);

}  // namespace carchase
