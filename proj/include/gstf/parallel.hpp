#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace gstf {

/// Worker count used by the column-parallel loops (1 = serial). Each loop
/// iteration writes only its own output slot, so results do not depend on it.
void set_thread_count(unsigned n);
unsigned thread_count();

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

}  // namespace gstf
