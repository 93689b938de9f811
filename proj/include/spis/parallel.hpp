#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <thread>
#include <vector>

#include "spis/stats.hpp"

namespace spis {

/// Runs draw_fn(j) for j in [0, N) and reduces the complex weights.
///
/// Draws are grouped into fixed-size blocks; each block is reduced
/// sequentially and blocks are merged in index order after all workers
/// finish, so the result is bit-identical for any worker count.
template <typename DrawFn>
std::pair<WeightAccumulator, double> run_draws(std::size_t n_draws, int workers,
                                               DrawFn&& draw_fn) {
  constexpr std::size_t kBlock = 4096;
  const auto t0 = std::chrono::steady_clock::now();

  const std::size_t n_blocks = (n_draws + kBlock - 1) / kBlock;
  std::vector<WeightAccumulator> blocks(n_blocks);

  if (workers < 1) workers = 1;
  const int n_threads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), std::max<std::size_t>(n_blocks, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};

  auto work = [&] {
    for (;;) {
      const std::size_t blk = next.fetch_add(1);
      if (blk >= n_blocks || failed.load(std::memory_order_relaxed)) return;
      const std::size_t lo = blk * kBlock;
      const std::size_t hi = std::min(lo + kBlock, n_draws);
      try {
        for (std::size_t j = lo; j < hi; ++j) blocks[blk].add(draw_fn(j));
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };

  if (n_threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) std::rethrow_exception(error);

  WeightAccumulator total;
  for (const auto& b : blocks) total.merge(b);

  const auto t1 = std::chrono::steady_clock::now();
  return {total, std::chrono::duration<double>(t1 - t0).count()};
}

}  // namespace spis
