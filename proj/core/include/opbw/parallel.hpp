#ifndef OPBW_PARALLEL_HPP
#define OPBW_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace opbw {

/// Worker count: explicit argument, else OPBW_THREADS, else hardware.
inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("OPBW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(state, index) for index in [0, count) across threads, with one
/// state object per worker (make_state()). Indices are handed out in
/// chunks from an atomic counter; outputs must be written to
/// index-addressed slots (or merged associatively) so results do not
/// depend on the schedule. The first exception thrown by any worker is
/// rethrown after all workers join.
template <class MakeState, class Fn>
void parallel_replicates(uint64_t count, int threads, MakeState&& make_state,
                         Fn&& fn) {
  const int n_threads =
      static_cast<int>(std::min<uint64_t>(resolve_thread_count(threads),
                                          count == 0 ? 1 : count));
  if (n_threads <= 1) {
    auto state = make_state();
    for (uint64_t i = 0; i < count; ++i) fn(state, i);
    return;
  }

  std::atomic<uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  const uint64_t chunk =
      std::max<uint64_t>(1, count / (static_cast<uint64_t>(n_threads) * 64));

  auto worker = [&]() {
    try {
      auto state = make_state();
      while (true) {
        const uint64_t begin = next.fetch_add(chunk);
        if (begin >= count) break;
        const uint64_t end = std::min(count, begin + chunk);
        for (uint64_t i = begin; i < end; ++i) fn(state, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace opbw

#endif  // OPBW_PARALLEL_HPP
