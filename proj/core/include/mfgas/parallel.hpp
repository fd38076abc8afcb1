#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace mfgas {

// Runs fn(i) for i in [0, count) on up to n_threads workers.  Tasks are
// claimed through an atomic counter, so results must be written to
// preassigned slots to stay deterministic.
template <typename Fn>
void parallel_for(std::size_t count, unsigned n_threads, Fn&& fn) {
  if (count == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned workers = std::min<unsigned>(n_threads == 0 ? hw : n_threads,
                                        static_cast<unsigned>(count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}
