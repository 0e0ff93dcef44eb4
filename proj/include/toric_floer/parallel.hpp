// Deterministic parallel map over an index range.  The worker count comes
// from TORIC_FLOER_THREADS (default: hardware concurrency).

#ifndef TORIC_FLOER_PARALLEL_HPP
#define TORIC_FLOER_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace toric_floer {

inline std::size_t thread_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TORIC_FLOER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = std::min(n, static_cast<std::size_t>(v));
  }
  return n;
}

/// Returns {f(0), ..., f(count-1)}; the result order never depends on scheduling.
template <class F>
auto parallel_map(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(count);
  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          out[i] = f(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  pool.clear();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace toric_floer

#endif  // TORIC_FLOER_PARALLEL_HPP
