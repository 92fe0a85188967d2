#include "adisk/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace adisk {

namespace {
std::atomic<int> g_workers{0};
}

void set_worker_count(int workers) { g_workers.store(workers < 0 ? 0 : workers); }

int worker_count() {
  int w = g_workers.load();
  if (w == 0) {
    unsigned hc = std::thread::hardware_concurrency();
    w = hc == 0 ? 1 : static_cast<int>(hc);
  }
  return w;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const int workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = workers - 1;
  if (static_cast<std::size_t>(spawn) > n - 1) spawn = static_cast<int>(n - 1);
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

}  // namespace adisk
