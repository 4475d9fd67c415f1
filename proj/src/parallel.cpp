// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#include "recap/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace recap {

namespace {
int g_thread_count = 0;  // 0 = not set explicitly
}

int thread_count() {
  if (g_thread_count > 0) return g_thread_count;
  if (const char* env = std::getenv("RECAP_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

void set_thread_count(int n) { g_thread_count = n; }

void parallel_for(int64_t begin, int64_t end,
                  const std::function<void(int64_t, int)>& body) {
  const int64_t count = end - begin;
  if (count <= 0) return;
  const int workers = static_cast<int>(std::min<int64_t>(thread_count(), count));
  if (workers <= 1) {
    for (int64_t i = begin; i < end; ++i) body(i, 0);
    return;
  }
  const int64_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int64_t lo = begin + w * chunk;
    const int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &body] {
      for (int64_t i = lo; i < hi; ++i) body(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace recap
