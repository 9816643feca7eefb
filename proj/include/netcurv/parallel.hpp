// Minimal index-range parallelism.  All hot loops accumulate integers per
// sample, so results are identical for any thread count.
#pragma once

#include <cstdint>
#include <functional>

namespace netcurv {

// Global default worker count: 0 = auto (NETCURV_THREADS env or hardware).
void set_thread_count(int n);
int effective_thread_count();

// Runs body(begin, end) over a partition of [0, n) on the worker pool.
// body must only touch state private to its range (or atomics).
void parallel_ranges(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace netcurv
