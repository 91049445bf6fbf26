#pragma once

#include <algorithm>
#include <cmath>

#include "carchase/approx_table.hpp"
#include "carchase/reeds_shepp.hpp"

namespace carchase {

// Schedule for the approximate/exact switch: the distance threshold
// shrinks from tau_init to tau_final as accumulated cost approaches
// estimated_max_g.
struct HybridConfig {
  double tau_init = 25.0;
  double tau_final = 4.0;
  double estimated_max_g = 100.0;
};

inline double hybrid_threshold(double g_value, const HybridConfig& cfg) {
  const double progress =
      std::min(1.0, std::max(0.0, g_value / cfg.estimated_max_g));
  return cfg.tau_init - (cfg.tau_init - cfg.tau_final) * progress;
}

// Approximate when still far from the goal, exact when close.
inline double hybrid_h(const Pose& s, const Pose& g, double g_value,
                       const HybridConfig& cfg, const ApproxTable& table,
                       const RSConfig& rs_cfg) {
  const double d = std::hypot(s.x - g.x, s.y - g.y);
  if (d > hybrid_threshold(g_value, cfg)) {
    return rs_approx(s, g, table);
  }
  return rs_exact(s, g, rs_cfg);
}

}  // namespace carchase
