#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace lgpoly {

inline int default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs body(r) for r in [0, count). Each replica must touch only its own
// output slot; results are then independent of the thread count, so any
// reduction done afterwards in replica order is deterministic.
template <class F>
void parallel_replicas(int threads, long long count, F&& body) {
  if (threads <= 1 || count <= 1) {
    for (long long r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<long long> next{0};
  auto worker = [&] {
    for (;;) {
      const long long r = next.fetch_add(1);
      if (r >= count) return;
      body(r);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<long long>(threads, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace lgpoly
