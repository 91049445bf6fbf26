#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>

#include "carchase/fingerprint.hpp"
#include "carchase/state_key.hpp"

namespace carchase {

struct CacheStats {
  std::uint64_t lookups = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t evictions = 0;

  double hit_rate() const {
    return lookups ? static_cast<double>(hits) / static_cast<double>(lookups)
                   : 0.0;
  }
};

// Heuristic cache keyed on (context, state key, conflict fingerprint).
// The context id separates queries with different goals (one per agent
// in a CBS run) that would otherwise alias on the state key alone.
class ConflictAwareCache {
 public:
  static constexpr std::size_t kDefaultCapacity = 100000;

  explicit ConflictAwareCache(std::size_t capacity = kDefaultCapacity)
      : capacity_(capacity) {}

  template <class Compute>
  double lookup_or_compute(std::uint32_t context, const StateKey& state,
                           const ConflictFingerprint& fp, Compute&& compute) {
    ++stats_.lookups;
    // Non-owning alias: the hot lookup path must not copy the
    // fingerprint's summary vectors.
    Key probe{context, state,
              std::shared_ptr<const ConflictFingerprint>(
                  std::shared_ptr<const ConflictFingerprint>{}, &fp)};
    auto it = entries_.find(probe);
    if (it != entries_.end()) {
      ++stats_.hits;
      return it->second;
    }
    ++stats_.misses;
    const double value = compute();
    if (entries_.size() >= capacity_) evict_half();
    bytes_ += entry_bytes(fp);
    entries_.emplace(
        Key{context, state, std::make_shared<const ConflictFingerprint>(fp)},
        value);
    return value;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const CacheStats& stats() const { return stats_; }
  std::uint64_t approx_bytes() const { return bytes_; }

  double avg_entry_bytes() const {
    return entries_.empty() ? 0.0
                            : static_cast<double>(bytes_) /
                                  static_cast<double>(entries_.size());
  }

  void clear() {
    entries_.clear();
    bytes_ = 0;
  }

 private:
  struct Key {
    std::uint32_t context;
    StateKey state;
    std::shared_ptr<const ConflictFingerprint> fp;

    bool operator==(const Key& o) const {
      return context == o.context && state == o.state && *fp == *o.fp;
    }
  };

  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      std::uint64_t h = StateKeyHash{}(k.state);
      h = hash_combine(h, k.fp->hash());
      h = hash_combine(h, k.context);
      return static_cast<std::size_t>(h);
    }
  };

  // State key 12 bytes + fingerprint + 8-byte value + hash table
  // overhead, mirroring the analytic per-entry model.
  static std::uint64_t entry_bytes(const ConflictFingerprint& fp) {
    return 12 + fp.byte_size() + 8 + 32;
  }

  // Clear-half policy: drop entries in internal iteration order until
  // at most half the capacity remains.
  void evict_half() {
    const std::size_t target = capacity_ / 2;
    auto it = entries_.begin();
    while (entries_.size() > target && it != entries_.end()) {
      bytes_ -= entry_bytes(*it->first.fp);
      it = entries_.erase(it);
      ++stats_.evictions;
    }
  }

  std::size_t capacity_;
  std::unordered_map<Key, double, KeyHash> entries_;
  CacheStats stats_;
  std::uint64_t bytes_ = 0;
};

}  // namespace carchase
