#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace sq3::detail {

// Splits [begin, end) into `threads` contiguous chunks and runs fn(lo, hi) on
// each. Chunks write disjoint output, so results never depend on `threads`.
template <typename Fn>
void parallel_chunks(std::uint64_t begin, std::uint64_t end, unsigned threads, Fn&& fn) {
  const std::uint64_t total = end > begin ? end - begin : 0;
  threads = std::max(1U, threads);
  if (threads == 1 || total < 2 * threads) {
    fn(begin, end);
    return;
  }
  const std::uint64_t step = (total + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = begin + t * step;
    const std::uint64_t hi = std::min(end, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sq3::detail
