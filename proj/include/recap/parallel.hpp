// Copyright (c) 2026 the recap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>

namespace recap {

// Worker count used by parallel_for. Resolution order: explicit set_thread_count,
// RECAP_THREADS environment variable, hardware concurrency.
int thread_count();
void set_thread_count(int n);

// Fork-join loop over [begin, end). Each worker owns a contiguous index range
// (static partition), so any per-thread accumulation merged in worker order is
// reproducible run to run. body(index, worker) must not touch other indices.
void parallel_for(int64_t begin, int64_t end,
                  const std::function<void(int64_t index, int worker)>& body);

}  // namespace recap
