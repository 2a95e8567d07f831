#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nres {

/// Worker cap: TOOL_THREADS env var, else the machine parallelism.
int worker_count();

/// Runs body(i) for i in [0, n). Work is chunked over worker_count() threads;
/// callers write results into preallocated slots so reductions stay deterministic.
template <class F>
void parallel_for(std::size_t n, const F& body) {
  const int workers = worker_count();
  if (workers <= 1 || n < 32) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t used = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(used);
  std::vector<std::exception_ptr> errors(used);
  for (std::size_t w = 0; w < used; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t lo = n * w / used;
      const std::size_t hi = n * (w + 1) / used;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace nres
