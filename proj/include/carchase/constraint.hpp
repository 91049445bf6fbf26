#pragma once

#include <cstdint>
#include <vector>

#include "carchase/geometry.hpp"

namespace carchase {

// Spatiotemporal exclusion: the agent may not bring its reference point
// inside the disc (center, radius) during timesteps [t_begin, t_end].
// Ids are dense (0, 1, 2, ...) within one solver run.
struct Constraint {
  std::uint32_t id = 0;
  int agent = -1;
  Point center;
  double radius = 0;
  int t_begin = 0;
  int t_end = 0;

  bool active_at(int t) const { return t >= t_begin && t <= t_end; }

  bool violates(const Point& p, int t) const {
    return active_at(t) && distance(p, center) < radius;
  }
};

using ConstraintList = std::vector<Constraint>;

}  // namespace carchase
