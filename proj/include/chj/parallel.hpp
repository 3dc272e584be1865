#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace chj {

// Worker cap: CONTACT_HJ_THREADS env var, overridable via set_threads().
// All parallel loops write disjoint indices, so results do not depend on the
// thread count.
inline int& thread_count() {
  static int count = [] {
    const char* env = std::getenv("CONTACT_HJ_THREADS");
    if (!env) return 1;
    int v = std::atoi(env);
    return v >= 1 ? v : 1;
  }();
  return count;
}

inline void set_threads(int t) { thread_count() = std::max(1, t); }

template <class F>
void parallel_for(int n, F&& body) {
  int workers = std::min(thread_count(), n);
  if (workers <= 1 || n < 256) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace chj
