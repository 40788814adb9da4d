#include "parset/par.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace parset {

namespace {
int g_thread_cap = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void set_thread_cap(int n) { g_thread_cap = std::max(1, n); }
int thread_cap() { return g_thread_cap; }

void parallel_for_chunks(int64_t n, int64_t chunk,
                         const std::function<void(int64_t, int64_t)>& fn) {
  if (n <= 0) return;
  chunk = std::max<int64_t>(1, chunk);
  const int64_t nchunks = (n + chunk - 1) / chunk;
  const int workers = static_cast<int>(std::min<int64_t>(g_thread_cap, nchunks));
  if (workers <= 1) {
    for (int64_t c = 0; c < nchunks; ++c)
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::atomic<int64_t> next{0};
  auto body = [&] {
    for (;;) {
      const int64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) break;
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers - 1));
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  const int64_t chunk = std::max<int64_t>(1, n / (8 * std::max(1, g_thread_cap)));
  parallel_for_chunks(n, chunk, [&](int64_t b, int64_t e) {
    for (int64_t i = b; i < e; ++i) fn(i);
  });
}

}  // namespace parset
