#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "forrlab/rng.hpp"

namespace forrlab {

// Deterministic parallel Monte Carlo. Work items are grouped into fixed-size
// blocks; block b always draws from RngStream::substream(seed, b) regardless
// of how many workers run, so results are identical for any worker count.
inline constexpr std::size_t kRngBlockSize = 64;

/// Evaluates fn(index, stream) for index in [0, count) and returns the results
/// in index order. fn must not touch shared mutable state.
template <class R, class Fn>
std::vector<R> parallel_map_seeded(std::uint64_t seed, std::size_t count, int workers, Fn fn) {
  std::vector<R> results(count);
  if (count == 0) return results;
  const std::size_t num_blocks = (count + kRngBlockSize - 1) / kRngBlockSize;
  auto run_block = [&](std::size_t b) {
    RngStream rng = RngStream::substream(seed, b);
    const std::size_t begin = b * kRngBlockSize;
    const std::size_t end = std::min(count, begin + kRngBlockSize);
    for (std::size_t i = begin; i < end; ++i) results[i] = fn(i, rng);
  };
  if (workers <= 1 || num_blocks == 1) {
    for (std::size_t b = 0; b < num_blocks; ++b) run_block(b);
    return results;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next.fetch_add(1); b < num_blocks; b = next.fetch_add(1)) run_block(b);
  };
  std::vector<std::thread> pool;
  const int nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), num_blocks);
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

}  // namespace forrlab
