// Copyright (c) 2026 The breather developers. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace breather {

// Worker count: BREATHER_THREADS caps it; unset means serial. All parallel
// loops write to disjoint slots and perform no cross-task reductions, so
// results are bit-identical at any worker count.
inline int worker_count() {
  static const int cached = [] {
    const char* env = std::getenv("BREATHER_THREADS");
    if (!env) return 1;
    const int requested = std::atoi(env);
    if (requested <= 1) return 1;
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    return hw > 0 ? std::min(requested, hw) : requested;
  }();
  return cached;
}

template <typename Fn>
void parallel_for(int n, Fn&& fn) {
  const int workers = std::min(worker_count(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace breather
