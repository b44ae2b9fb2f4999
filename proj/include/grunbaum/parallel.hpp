#pragma once

// Deterministic parallel reduction for Monte Carlo work.
//
// Work is split into fixed-size blocks.  Each block is processed independently
// (seeded by its block index, see rng.hpp) and the per-block results are
// combined in block order after all workers finish.  The thread count -- taken
// from the GRUNBAUM_LAB_THREADS environment variable, default 1 -- therefore
// changes wall time only, never output bits.

#include <cstdint>
#include <functional>
#include <vector>

namespace grunbaum {

/// Worker count: GRUNBAUM_LAB_THREADS clamped to [1, 256]; 1 if unset/invalid.
int worker_count();

/// Accumulator produced by one Monte Carlo block: a small vector of sums
/// (e.g. {hits_below, hits_total} or {sum_w, sum_wx}).
using BlockSums = std::vector<double>;

/// Runs `block_fn(block_index)` for block_index in [0, num_blocks) across
/// worker_count() threads and returns the component-wise total, summed in
/// ascending block order.
BlockSums parallel_block_sum(std::uint64_t num_blocks,
                             const std::function<BlockSums(std::uint64_t)>& block_fn);

/// Number of samples per Monte Carlo block.  Fixed so that a total sample
/// count maps to a fixed block schedule regardless of threading.
constexpr std::uint64_t kMcBlockSize = 1u << 16;

}  // namespace grunbaum
