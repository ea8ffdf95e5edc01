#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace sullivan {

/// Worker count: SULLIVAN_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least one).
inline std::size_t worker_count() {
  if (const char* env = std::getenv("SULLIVAN_THREADS")) {
    try {
      long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace detail {
inline thread_local bool inside_pool = false;
}

/// Runs body(i) for i in [0, n) on a small pool. Calls made from inside a
/// pool worker run serially. The first exception thrown by any task is
/// rethrown after all workers have stopped.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, std::size_t workers = worker_count()) {
  workers = std::min(workers, n);
  if (workers <= 1 || detail::inside_pool) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      detail::inside_pool = true;
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sullivan
