#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace idslab {

/// Runs fn(taskIndex) for every index in [0, taskCount) on up to
/// `threads` workers (0 = hardware concurrency).  Tasks must be pure up
/// to their own output slot; results are aggregated by index, so the
/// outcome is deterministic regardless of pool size.
inline void parallelFor(std::size_t taskCount, int threads,
                        const std::function<void(std::size_t)>& fn) {
  if (taskCount == 0) return;
  unsigned workers = threads > 0 ? static_cast<unsigned>(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::size_t>(workers, taskCount);
  if (workers <= 1) {
    for (std::size_t i = 0; i < taskCount; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= taskCount) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errorMutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace idslab
