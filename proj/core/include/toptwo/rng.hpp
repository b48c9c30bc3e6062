#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace toptwo {

/// Sub-stream identifiers. Each consumer of randomness draws from its own
/// stream so that adding draws in one place never shifts another's sequence.
enum class StreamId : std::uint64_t {
  kObservations = 0,
  kLeader = 1,
  kChallenger = 2,
  kSelector = 3,
  kInstance = 4,
};

class RandomStream {
 public:
  /// `lane` separates parallel streams of the same kind (one per arm for observations).
  RandomStream(std::uint64_t seed, StreamId id, std::uint64_t lane = 0);

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// The algorithm-side streams of one episode.
struct EpisodeRng {
  explicit EpisodeRng(std::uint64_t seed)
      : leader(seed, StreamId::kLeader),
        challenger(seed, StreamId::kChallenger),
        selector(seed, StreamId::kSelector) {}

  RandomStream leader;
  RandomStream challenger;
  RandomStream selector;
};

}  // namespace toptwo
