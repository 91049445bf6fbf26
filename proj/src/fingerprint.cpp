#include "carchase/fingerprint.hpp"

#include <algorithm>
#include <cmath>

namespace carchase {

namespace {
constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v;
  h *= kFnvPrime;
  // Final avalanche happens via hash_combine at use sites; one extra
  // xor-shift keeps sequential ids from clustering.
  return h ^ (h >> 29);
}
}  // namespace

std::uint64_t ConflictFingerprint::compute_hash() const {
  std::uint64_t h = kFnvOffset;
  for (std::uint64_t w : bits_) h = fnv_mix(h, w);
  for (std::uint32_t id : overflow_) h = fnv_mix(h, id);
  return h;
}

bool ConflictFingerprint::contains(std::uint32_t id) const {
  if (id < 256) {
    return (bits_[id >> 6] >> (id & 63)) & 1ULL;
  }
  return std::binary_search(overflow_.begin(), overflow_.end(), id);
}

ConflictFingerprint ConflictFingerprint::Builder::finish() {
  std::sort(items_.begin(), items_.end(),
            [](const Item& a, const Item& b) { return a.id < b.id; });
  ConflictFingerprint fp;
  for (const auto& it : items_) {
    if (it.id < 256) {
      fp.bits_[it.id >> 6] |= 1ULL << (it.id & 63);
    } else {
      fp.overflow_.push_back(it.id);
    }
    fp.spatial_.push_back(it.spatial);
    fp.temporal_.push_back(it.temporal);
    ++fp.count_;
  }
  fp.hash_ = fp.compute_hash();
  return fp;
}

namespace {

// Spatial half of the relevance test plus summary capture; the caller
// has already passed the temporal window.
struct SpatialFilter {
  Point sp, gp;
  double dir_x = 0, dir_y = 0;
  ConflictFingerprint::Builder builder;

  SpatialFilter(const TimedState& s, const Pose& goal)
      : sp(s.pose.position()), gp(goal.position()) {
    const double goal_dist = distance(sp, gp);
    if (goal_dist > 1e-12) {
      dir_x = (gp.x - sp.x) / goal_dist;
      dir_y = (gp.y - sp.y) / goal_dist;
    }
  }

  void consider(const Constraint& c) {
    const double d_path = distance_to_segment(c.center, sp, gp);
    const bool near_path = d_path <= tau_spatial + c.radius;
    const bool ahead =
        (c.center.x - sp.x) * dir_x + (c.center.y - sp.y) * dir_y > 0;
    if (!near_path && !ahead) return;
    ConflictFingerprint::SpatialSummary sp_sum{
        static_cast<float>(c.center.x), static_cast<float>(c.center.y),
        static_cast<float>(c.radius)};
    ConflictFingerprint::TemporalSummary t_sum{
        static_cast<std::uint16_t>(std::clamp(c.t_begin, 0, 65535)),
        static_cast<std::uint16_t>(std::clamp(c.t_end, 0, 65535))};
    builder.add(c.id, sp_sum, t_sum);
  }

  double tau_spatial = 0;
};

}  // namespace

ConflictFingerprint extract_fingerprint(const TimedState& s, const Pose& goal,
                                        const ConstraintList& constraints,
                                        const RelevanceConfig& cfg) {
  SpatialFilter filter(s, goal);
  filter.tau_spatial = cfg.tau_spatial;
  for (const auto& c : constraints) {
    // Temporal: interval against window (conservative interval form).
    if (c.t_end < s.time - cfg.t_window || c.t_begin > s.time + cfg.t_window) {
      continue;
    }
    filter.consider(c);
  }
  return filter.builder.finish();
}

ConstraintIndex::ConstraintIndex(const ConstraintList& constraints) {
  for (const auto& c : constraints) {
    if (c.t_end - c.t_begin <= kShortSpan) {
      short_.push_back(c);
      max_short_span_ = std::max(max_short_span_, c.t_end - c.t_begin);
    } else {
      long_.push_back(c);
    }
  }
  std::sort(short_.begin(), short_.end(),
            [](const Constraint& a, const Constraint& b) {
              return a.t_begin < b.t_begin;
            });
}

ConflictFingerprint extract_fingerprint(const TimedState& s, const Pose& goal,
                                        const ConstraintIndex& index,
                                        const RelevanceConfig& cfg) {
  SpatialFilter filter(s, goal);
  filter.tau_spatial = cfg.tau_spatial;
  index.for_each_in_window(s.time, cfg.t_window,
                           [&](const Constraint& c) { filter.consider(c); });
  return filter.builder.finish();
}

}  // namespace carchase
