#ifndef OPBW_REACH_HPP
#define OPBW_REACH_HPP

#include <cstdint>
#include <vector>

#include "opbw/lattice.hpp"

namespace opbw {

// Lazy reachability on the oriented lattice. reaches_level() runs a
// right-first depth-first search from a site, examining edges on demand
// and memoizing a verdict per site: can it reach the target time level
// by open oriented edges? The memo makes backtracking over shared dead
// subtrees O(1), which is what keeps half-line explorations linear in
// the horizon.

enum : uint8_t { kVerdictUnknown = 0, kVerdictDead = 1, kVerdictAlive = 2 };

/// Open-addressing site -> verdict map, keyed by packed coordinates.
/// Verdicts are relative to a fixed target level; reset() switches level
/// and clears entries while keeping capacity.
class ReachCache {
 public:
  explicit ReachCache(int64_t target_level = 0) { reset(target_level); }

  int64_t target_level() const { return level_; }

  void reset(int64_t target_level) {
    level_ = target_level;
    count_ = 0;
    if (slots_.size() < kInitialSlots) slots_.resize(kInitialSlots);
    std::fill(slots_.begin(), slots_.end(), uint64_t{0});
  }

  uint8_t lookup(Site s) const {
    const uint64_t key = site_key(s);
    const size_t mask = slots_.size() - 1;
    size_t idx = static_cast<size_t>(splitmix64(key)) & mask;
    while (true) {
      const uint64_t slot = slots_[idx];
      if (slot == 0) return kVerdictUnknown;
      if ((slot >> 2) == key) return static_cast<uint8_t>(slot & 3u);
      idx = (idx + 1) & mask;
    }
  }

  void store(Site s, bool alive) {
    if (count_ * 10 >= slots_.size() * 7) grow();
    insert(site_key(s), alive ? kVerdictAlive : kVerdictDead);
  }

  size_t size() const { return count_; }

  std::vector<uint64_t>& dfs_scratch() { return scratch_; }

 private:
  static constexpr size_t kInitialSlots = 1u << 10;

  void insert(uint64_t key, uint8_t verdict) {
    const size_t mask = slots_.size() - 1;
    size_t idx = static_cast<size_t>(splitmix64(key)) & mask;
    while (slots_[idx] != 0) {
      if ((slots_[idx] >> 2) == key) {
        slots_[idx] = (key << 2) | verdict;
        return;
      }
      idx = (idx + 1) & mask;
    }
    slots_[idx] = (key << 2) | verdict;
    ++count_;
  }

  void grow() {
    std::vector<uint64_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, 0);
    const size_t saved = count_;
    for (uint64_t slot : old) {
      if (slot != 0) insert(slot >> 2, static_cast<uint8_t>(slot & 3u));
    }
    count_ = saved;
  }

  std::vector<uint64_t> slots_;
  std::vector<uint64_t> scratch_;  // reusable DFS stack storage
  size_t count_ = 0;
  int64_t level_ = 0;
};

/// Per-level running maximum of visited (reachable) sites. Backing store
/// for right-edge trajectories.
class Envelope {
 public:
  Envelope(int64_t t0, int64_t t1)
      : t0_(t0), best_(static_cast<size_t>(t1 - t0 + 1), kNone) {}

  void visit(Site s) {
    auto& b = best_[static_cast<size_t>(s.i - t0_)];
    const auto x = static_cast<int32_t>(s.x);
    if (b == kNone || x > b) b = x;
  }

  int64_t t0() const { return t0_; }
  const std::vector<int32_t>& levels() const { return best_; }
  static constexpr int32_t kNone = INT32_MIN;

 private:
  int64_t t0_;
  std::vector<int32_t> best_;
};

/// Records which edges a computation examined. Always counts; stores the
/// packed keys only when asked (disjointness tests).
class ExamRecorder {
 public:
  explicit ExamRecorder(bool keep_keys = false) : keep_keys_(keep_keys) {}

  void record(Site from, Dir d) {
    ++count_;
    if (keep_keys_) keys_.push_back(edge_key(from, d));
  }

  uint64_t count() const { return count_; }
  std::vector<uint64_t> take_keys() { return std::move(keys_); }

 private:
  bool keep_keys_;
  uint64_t count_ = 0;
  std::vector<uint64_t> keys_;
};

/// Can `start` reach time level `cache.target_level()` along open
/// oriented edges? Right-first DFS with memoized verdicts; every visited
/// site is reported to `envelope` and every examined edge to `recorder`
/// (both optional).
bool reaches_level(const EdgeField& field, Site start, ReachCache& cache,
                   Envelope* envelope = nullptr,
                   ExamRecorder* recorder = nullptr);

}  // namespace opbw

#endif  // OPBW_REACH_HPP
