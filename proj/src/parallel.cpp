#include "netcurv/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace netcurv {

namespace {
std::atomic<int> g_thread_count{0};
}

void set_thread_count(int n) { g_thread_count.store(n < 0 ? 0 : n); }

int effective_thread_count() {
  int n = g_thread_count.load();
  if (n == 0) {
    if (const char* env = std::getenv("NETCURV_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return n > 0 ? n : 1;
}

void parallel_ranges(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (n <= 0) return;
  const int workers = static_cast<int>(std::min<std::int64_t>(effective_thread_count(), n));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = std::min<std::int64_t>(begin + chunk, n);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace netcurv
