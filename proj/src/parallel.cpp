#include "grunbaum/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace grunbaum {

int worker_count() {
  const char* env = std::getenv("GRUNBAUM_LAB_THREADS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 1;
  if (v > 256) v = 256;
  return static_cast<int>(v);
}

BlockSums parallel_block_sum(
    std::uint64_t num_blocks,
    const std::function<BlockSums(std::uint64_t)>& block_fn) {
  if (num_blocks == 0) return {};
  const int workers = worker_count();
  std::vector<BlockSums> per_block(num_blocks);
  if (workers <= 1 || num_blocks == 1) {
    for (std::uint64_t b = 0; b < num_blocks; ++b) per_block[b] = block_fn(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          std::uint64_t b = next.fetch_add(1);
          if (b >= num_blocks || failed.load()) return;
          try {
            per_block[b] = block_fn(b);
          } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && first_error) std::rethrow_exception(first_error);
  }
  // Combine strictly in block order for bit-for-bit reproducibility.
  BlockSums total;
  for (std::uint64_t b = 0; b < num_blocks; ++b) {
    const BlockSums& s = per_block[b];
    if (total.size() < s.size()) total.resize(s.size(), 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) total[i] += s[i];
  }
  return total;
}

}  // namespace grunbaum
