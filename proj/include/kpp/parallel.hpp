#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace kpp {

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Results must be
// written into per-index slots by the caller; exceptions must be captured by
// fn itself.  threads <= 0 means hardware concurrency.
inline void parallel_for_index(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace kpp
