#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace blbvs::detail {

/// Runs body(0..n_tasks-1) on up to `workers` threads. Tasks are claimed
/// from an atomic counter; callers must make each task write only its own
/// output slot so results never depend on scheduling. The first exception
/// is rethrown after all threads join.
inline void parallel_for(long n_tasks, int workers,
                         const std::function<void(long)>& body) {
  if (n_tasks <= 0) return;
  if (workers <= 1 || n_tasks == 1) {
    for (long t = 0; t < n_tasks; ++t) body(t);
    return;
  }
  const int n_threads =
      static_cast<int>(std::min<long>(workers, n_tasks));
  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto run = [&]() {
    for (;;) {
      const long t = next.fetch_add(1);
      if (t >= n_tasks) return;
      try {
        body(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(run);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace blbvs::detail
