#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ltrank {

inline unsigned hardware_workers() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

/// Worker count from the LTRANK_WORKERS environment variable, falling back to
/// the hardware thread count. Worker count never affects results, only wall
/// time.
inline unsigned worker_count_from_env() {
  if (const char* s = std::getenv("LTRANK_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return hardware_workers();
}

/// Runs body(i) for i in [0, n) on `workers` threads, contiguous blocks.
/// Bodies must write only to disjoint, preallocated slots; the first exception
/// thrown by any body is rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  if (n == 0) return;
  if (workers > n) workers = static_cast<unsigned>(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned t = 0; t < workers; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ltrank
