#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qring::app {

/// Default worker count: every available core, at least one.
inline int default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// results[i] = task(i) for i < count, on up to `threads` workers. Tasks
/// are claimed in index order; output order never depends on scheduling.
/// task must not throw.
template <class T, class Task>
std::vector<T> parallel_map(std::size_t count, int threads, Task task) {
  std::vector<T> results(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) results[i] = task(i);
  };
  const std::size_t n_workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (n_workers <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace qring::app
