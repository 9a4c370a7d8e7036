#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace grn {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(begin, end) over contiguous chunks of [0, n) on up to `workers`
/// threads. Chunks are static, so each index is visited exactly once; callers
/// write results by index to stay independent of scheduling.
template <typename Fn>
void parallel_for_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = resolve_workers(workers);
  const std::size_t threads = std::min<std::size_t>(workers, n);
  if (threads <= 1) {
    if (n > 0) fn(std::size_t{0}, n);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t base = n / threads;
  const std::size_t extra = n % threads;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t end = begin + base + (t < extra ? 1 : 0);
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
    begin = end;
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace grn
