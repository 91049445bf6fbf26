#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "carchase/constraint.hpp"
#include "carchase/geometry.hpp"
#include "carchase/state_key.hpp"

namespace carchase {

struct RelevanceConfig {
  int t_window = 100;
  double tau_spatial = 10.0;
};

// Compact identity of the constraint subset relevant to one heuristic
// query. Identity (equality, hash) is the id set alone: a 256-bit
// bitset plus a sorted overflow list for ids >= 256. The spatial and
// temporal summaries ride along for diagnostics and byte accounting.
class ConflictFingerprint {
 public:
  struct SpatialSummary {
    float x = 0, y = 0, radius = 0;
  };
  struct TemporalSummary {
    std::uint16_t t_begin = 0, t_end = 0;
  };

  class Builder {
   public:
    void add(std::uint32_t id, SpatialSummary spatial,
             TemporalSummary temporal) {
      items_.push_back({id, spatial, temporal});
    }
    ConflictFingerprint finish();

   private:
    struct Item {
      std::uint32_t id;
      SpatialSummary spatial;
      TemporalSummary temporal;
    };
    std::vector<Item> items_;
  };

  ConflictFingerprint() { hash_ = compute_hash(); }

  bool operator==(const ConflictFingerprint& o) const {
    return hash_ == o.hash_ && bits_ == o.bits_ && overflow_ == o.overflow_;
  }

  std::uint64_t hash() const { return hash_; }
  bool empty() const { return count_ == 0; }
  int constraint_count() const { return count_; }
  bool contains(std::uint32_t id) const;

  const std::vector<SpatialSummary>& spatial_summary() const {
    return spatial_;
  }
  const std::vector<TemporalSummary>& temporal_summary() const {
    return temporal_;
  }

  // Analytic size model: 32-byte bitset + 8-byte cached hash +
  // 8 bytes per overflow id + 16 bytes of summary per constraint.
  std::uint64_t byte_size() const {
    return 32 + 8 + 8 * overflow_.size() + 16 * static_cast<std::uint64_t>(count_);
  }

 private:
  friend class Builder;
  std::uint64_t compute_hash() const;

  std::array<std::uint64_t, 4> bits_{};
  std::vector<std::uint32_t> overflow_;  // sorted, ids >= 256
  std::vector<SpatialSummary> spatial_;
  std::vector<TemporalSummary> temporal_;
  int count_ = 0;
  std::uint64_t hash_ = 0;
};

// Relevance filter for the car-like domain: a constraint is relevant
// when its time interval intersects the window around s.time and it is
// either near the straight state-goal segment (inflated by its own
// radius) or ahead of the state in the goal direction.
ConflictFingerprint extract_fingerprint(const TimedState& s, const Pose& goal,
                                        const ConstraintList& constraints,
                                        const RelevanceConfig& cfg);

// Time-sorted view of a constraint list so the temporal test can binary
// search instead of scanning everything; yields fingerprints identical
// to the plain overload.
class ConstraintIndex {
 public:
  explicit ConstraintIndex(const ConstraintList& constraints);

  // Calls fn(c) for every constraint whose interval intersects
  // [t - t_window, t + t_window].
  template <class Fn>
  void for_each_in_window(int t, int t_window, Fn&& fn) const {
    for (const Constraint& c : long_) {
      if (c.t_end >= t - t_window && c.t_begin <= t + t_window) fn(c);
    }
    const auto cmp = [](const Constraint& c, int v) { return c.t_begin < v; };
    auto lo = std::lower_bound(short_.begin(), short_.end(),
                               t - t_window - max_short_span_, cmp);
    for (; lo != short_.end() && lo->t_begin <= t + t_window; ++lo) {
      if (lo->t_end >= t - t_window) fn(*lo);
    }
  }

 private:
  static constexpr int kShortSpan = 16;
  std::vector<Constraint> short_;  // span <= kShortSpan, sorted by t_begin
  std::vector<Constraint> long_;   // the few wide intervals (parked tails)
  int max_short_span_ = 0;
};

ConflictFingerprint extract_fingerprint(const TimedState& s, const Pose& goal,
                                        const ConstraintIndex& index,
                                        const RelevanceConfig& cfg);

}  // namespace carchase
