#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>

#include "carchase/geometry.hpp"

namespace carchase {

struct Resolution {
  double cell_size = 1.0;
  int heading_bins = 72;
};

// Discrete identity of a TimedState: grid cell, heading bin, timestep.
// Used both as the closed-set key in hybrid-state A* and as the state
// component of cache keys.
struct StateKey {
  std::int32_t cell_x = 0;
  std::int32_t cell_y = 0;
  std::int32_t heading_bin = 0;
  std::int32_t time = 0;

  auto operator<=>(const StateKey&) const = default;
};

inline StateKey discretize(const TimedState& s, const Resolution& res) {
  StateKey k;
  k.cell_x = static_cast<std::int32_t>(std::floor(s.pose.x / res.cell_size));
  k.cell_y = static_cast<std::int32_t>(std::floor(s.pose.y / res.cell_size));
  const double bin_width = kTwoPi / res.heading_bins;
  int b = static_cast<int>(std::floor(s.pose.theta / bin_width));
  b %= res.heading_bins;
  if (b < 0) b += res.heading_bins;
  k.heading_bin = b;
  k.time = s.time;
  return k;
}

// Representative pose of a key: cell center, bin center. Heuristic
// queries go through this so that the heuristic is a pure function of
// the key and caching cannot change search behavior.
inline TimedState canonical_state(const StateKey& k, const Resolution& res) {
  TimedState s;
  s.pose.x = (k.cell_x + 0.5) * res.cell_size;
  s.pose.y = (k.cell_y + 0.5) * res.cell_size;
  s.pose.theta =
      normalize_angle((k.heading_bin + 0.5) * (kTwoPi / res.heading_bins));
  s.time = k.time;
  return s;
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  // 64-bit mix in the splitmix64 style.
  v += 0x9e3779b97f4a7c15ULL + seed;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return v ^ (v >> 31);
}

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = hash_combine(0, static_cast<std::uint32_t>(k.cell_x));
    h = hash_combine(h, static_cast<std::uint32_t>(k.cell_y));
    h = hash_combine(h, static_cast<std::uint32_t>(k.heading_bin));
    h = hash_combine(h, static_cast<std::uint32_t>(k.time));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace carchase
