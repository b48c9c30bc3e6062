#include "toptwo/rng.hpp"

#include <stdexcept>

namespace toptwo {

RandomStream::RandomStream(std::uint64_t seed, StreamId id, std::uint64_t lane) {
  const auto stream = static_cast<std::uint64_t>(id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(lane),
                    static_cast<std::uint32_t>(lane >> 32), 0x70707770u};
  engine_.seed(seq);
}

std::size_t RandomStream::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cannot draw an index from an empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace toptwo
