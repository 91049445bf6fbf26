#pragma once

#include <array>
#include <limits>
#include <vector>

#include "carchase/geometry.hpp"

namespace carchase {

struct RSConfig {
  double turning_radius = 2.0;
  double reverse_penalty = 1.0;  // >= 1, weight on reversing segments
};

enum class RSSegType { Left, Straight, Right };

// One segment of a Reeds-Shepp word. Lengths are normalized to unit
// turning radius and signed: negative means the car reverses.
struct RSSegment {
  RSSegType type = RSSegType::Straight;
  double length = 0;
};

struct RSPath {
  std::array<RSSegment, 5> segments{};
  int num_segments = 0;
  // Normalized totals; multiply by turning_radius for meters.
  double length = std::numeric_limits<double>::infinity();
  double cost = std::numeric_limits<double>::infinity();
};

// Minimum-cost Reeds-Shepp word between two poses, where reversing
// segments are weighted by reverse_penalty.
RSPath rs_shortest(const Pose& from, const Pose& to, const RSConfig& cfg);

// Penalized path length in meters. Total function: 0 when from == to.
double rs_exact(const Pose& from, const Pose& to, const RSConfig& cfg);

struct RSWaypoint {
  Pose pose;
  double cost = 0;  // penalized meters consumed by this sub-step
};

// Discretize a word into sub-steps of at most max_step meters each,
// splitting at segment boundaries. The final waypoint lands exactly on
// the word's endpoint; `from` itself is not included.
std::vector<RSWaypoint> rs_waypoints(const Pose& from, const RSPath& path,
                                     const RSConfig& cfg, double max_step);

}  // namespace carchase
