#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "toptwo/numerics.hpp"

namespace toptwo {

/// Interaction record of one episode.
///
/// `round()` is the time index n of the next decision, so that n - 1 samples
/// have been observed. Leader bookkeeping (leader_counts, pair_counts) only
/// starts after every arm has been pulled once.
class BanditState {
 public:
  explicit BanditState(std::size_t num_arms);

  std::size_t num_arms() const { return pulls_.size(); }
  std::uint64_t round() const { return round_; }
  std::uint64_t samples() const { return round_ - 1; }

  std::uint64_t pulls(std::size_t arm) const { return pulls_.at(arm); }
  std::span<const std::uint64_t> pulls() const { return pulls_; }
  double sum(std::size_t arm) const { return sums_.at(arm); }
  double mean(std::size_t arm) const;
  std::vector<double> means() const;

  std::uint64_t leader_count(std::size_t arm) const { return leader_counts_.at(arm); }
  /// Pulls of `arm` in rounds where `leader` was the leader.
  std::uint64_t pair_count(std::size_t leader, std::size_t arm) const;

  std::optional<std::size_t> last_leader() const { return last_leader_; }
  std::optional<std::size_t> last_challenger() const { return last_challenger_; }

  bool initialized() const;

  /// Argmax of the empirical means, lowest index on ties.
  std::size_t empirical_best() const;

  /// Pull without leader bookkeeping (initialization, LUCB, TaS, uniform).
  void record(std::size_t arm, double sample);

  /// Top Two pull: `chosen` must be the leader or the challenger.
  void observe(std::size_t leader, std::size_t challenger, std::size_t chosen, double sample);

 private:
  void check_arm(std::size_t arm) const;

  std::uint64_t round_ = 1;
  std::vector<std::uint64_t> pulls_;
  std::vector<double> sums_;
  std::vector<std::uint64_t> leader_counts_;
  std::vector<std::uint64_t> pair_counts_;  // row-major K x K
  std::optional<std::size_t> last_leader_;
  std::optional<std::size_t> last_challenger_;
};

struct StoppingDecision {
  bool stop = false;
  double statistic = 0.0;        // min pairwise GLR against the empirical best
  std::size_t recommendation = 0;
  double threshold_value = 0.0;  // sqrt(2 c(n - 1, delta))
};

/// GLR stopping rule evaluated at the current round. Throws std::logic_error
/// when an arm has never been pulled.
StoppingDecision glr_check(const BanditState& state, const Threshold& threshold);
StoppingDecision glr_check(const BanditState& state, double delta, const ThresholdSpec& spec);

/// N_n / (n - 1). Throws std::logic_error before the first sample.
std::vector<double> empirical_allocation(const BanditState& state);

}  // namespace toptwo
