#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace curvedet {

// Splits [begin, end) into at most `threads` contiguous chunks and calls
// fn(chunk_begin, chunk_end) for each, one chunk per worker. Callers must
// write only to disjoint outputs per index; results are then independent of
// the thread count.
template <typename Fn>
void parallel_for(int begin, int end, int threads, Fn&& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  const int workers = std::clamp(threads, 1, count);
  if (workers == 1) {
    fn(begin, end);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const int chunk = (count + workers - 1) / workers;
  for (int w = 1; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  fn(begin, std::min(end, begin + chunk));
}

}  // namespace curvedet
