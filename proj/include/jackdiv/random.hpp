#pragma once

// Seeded random streams and block-parallel execution.
//
// Monte Carlo work is cut into fixed-size blocks.  Each block draws from its
// own generator seeded from (seed, stream, block), so the values produced do
// not depend on how blocks are distributed over threads.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace jackdiv {

inline constexpr std::size_t kBlockSize = 4096;

std::uint64_t splitmix64(std::uint64_t& state);

std::mt19937_64 make_block_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t block);

// Calls fn(block) for block = 0..n_blocks-1 on up to `threads` threads.
// threads <= 1 runs inline.  Exceptions from fn are rethrown.
void run_blocks(std::size_t n_blocks, int threads,
                const std::function<void(std::size_t)>& fn);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace jackdiv
