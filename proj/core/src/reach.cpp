#include "opbw/reach.hpp"

#include <cassert>

namespace opbw {

namespace {

inline Site unpack_site(uint64_t key) {
  const int64_t x =
      static_cast<int64_t>(key & 0x7fffffffu) - (int64_t(1) << 30);
  const int64_t i = static_cast<int64_t>(key >> 31) - (int64_t(1) << 30);
  return {x, i};
}

}  // namespace

bool reaches_level(const EdgeField& field, Site start, ReachCache& cache,
                   Envelope* envelope, ExamRecorder* recorder) {
  const int64_t level = cache.target_level();
  assert(start.valid());
  assert(start.i <= level);
  if (envelope) envelope->visit(start);
  if (start.i == level) return true;
  {
    const uint8_t v = cache.lookup(start);
    if (v != kVerdictUnknown) return v == kVerdictAlive;
  }

  // Iterative right-first DFS. A frame is (site_key << 2 | stage):
  //   stage 0: right edge not examined yet
  //   stage 1: right child pushed, waiting for its verdict
  //   stage 3: left child pushed, waiting for its verdict
  // Stack sites have strictly increasing time, so a site can never be
  // on the stack twice.
  auto& stack = cache.dfs_scratch();
  stack.clear();
  stack.push_back(site_key(start) << 2);

  uint8_t last_verdict = kVerdictUnknown;

  auto verdict_of = [&](Site c) -> uint8_t {
    if (c.i == level) return kVerdictAlive;
    return cache.lookup(c);
  };

  while (!stack.empty()) {
    const uint64_t word = stack.back();
    const Site s = unpack_site(word >> 2);
    uint8_t stage = static_cast<uint8_t>(word & 3u);
    uint8_t verdict = kVerdictUnknown;
    bool descended = false;

    if (stage == 0) {
      const bool open_right = field.is_open(s, Dir::Right);
      if (recorder) recorder->record(s, Dir::Right);
      if (open_right) {
        const Site c = right_child(s);
        const uint8_t v = verdict_of(c);
        if (envelope) envelope->visit(c);
        if (v == kVerdictUnknown) {
          stack.back() = (word & ~uint64_t(3)) | 1;
          stack.push_back(site_key(c) << 2);
          descended = true;
        } else if (v == kVerdictAlive) {
          verdict = kVerdictAlive;
        } else {
          stage = 2;
        }
      } else {
        stage = 2;
      }
    } else if (stage == 1) {
      // Right child was pushed, so it was below the target level and its
      // verdict is now memoized.
      const uint8_t v = cache.lookup(right_child(s));
      assert(v != kVerdictUnknown);
      if (v == kVerdictAlive) {
        verdict = kVerdictAlive;
      } else {
        stage = 2;
      }
    }

    if (!descended && verdict == kVerdictUnknown) {
      if (stage == 2) {
        const bool open_left = field.is_open(s, Dir::Left);
        if (recorder) recorder->record(s, Dir::Left);
        if (open_left) {
          const Site c = left_child(s);
          const uint8_t v = verdict_of(c);
          if (envelope) envelope->visit(c);
          if (v == kVerdictUnknown) {
            stack.back() = (word & ~uint64_t(3)) | 3;
            stack.push_back(site_key(c) << 2);
            descended = true;
          } else {
            verdict = v;
          }
        } else {
          verdict = kVerdictDead;
        }
      } else if (stage == 3) {
        verdict = cache.lookup(left_child(s));
        assert(verdict != kVerdictUnknown);
      }
    }

    if (descended) continue;
    assert(verdict != kVerdictUnknown);
    cache.store(s, verdict == kVerdictAlive);
    stack.pop_back();
    last_verdict = verdict;
  }
  return last_verdict == kVerdictAlive;
}

}  // namespace opbw
