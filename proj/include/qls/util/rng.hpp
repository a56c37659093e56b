#pragma once

#include <cstdint>
#include <random>

namespace qls {

// Independent generator for stream `stream` of a run seeded with `seed`.
// Streams depend only on (seed, stream), never on scheduling, which makes
// shot batches and Monte-Carlo replicates reproducible under any thread count.
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x51a7u};
  return std::mt19937_64(seq);
}

} // namespace qls
