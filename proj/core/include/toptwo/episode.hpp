#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toptwo/bandit_state.hpp"
#include "toptwo/instance.hpp"
#include "toptwo/numerics.hpp"
#include "toptwo/rng.hpp"
#include "toptwo/rules.hpp"

namespace toptwo {

struct EpisodeOptions {
  double delta = 0.1;
  ThresholdSpec::Kind threshold = ThresholdSpec::Kind::HEURISTIC;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t checkpoint_every = 0;  // 0 disables the error trajectory
  bool record_wall_time = true;
};

struct BetaSummary {
  std::uint64_t count = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct EpisodeResult {
  std::uint64_t stopping_time = 0;  // time index n at which the stop fired
  std::size_t recommended = 0;
  bool correct = false;
  bool truncated = false;
  /// 1(recommendation != best) at n = c, 2c, ... for every checkpoint n < stopping_time.
  std::vector<std::uint8_t> error_trajectory;
  std::optional<BetaSummary> beta;  // Top Two rules only
  double wall_seconds = 0.0;
};

/// Gaussian unit-variance rewards, one random stream per arm so that the k-th
/// pull of an arm returns the same value whatever rule is being run.
class RewardSource {
 public:
  RewardSource(const Instance& inst, std::uint64_t seed);
  double draw(std::size_t arm);

 private:
  std::vector<double> means_;
  std::vector<RandomStream> streams_;
};

/// One episode, driven step by step. `check_stop` and `sample` are separate so
/// that fixed-length runs can ignore the stopping rule.
class Episode {
 public:
  Episode(const Instance& inst, RuleConfig rule, const EpisodeOptions& options);

  /// Stopping rule at the current round; returns the recommendation when it fires.
  std::optional<std::size_t> check_stop();
  /// One round of the sampling rule (two pulls for LUCB).
  void sample();

  const BanditState& state() const { return state_; }
  const TrackingState& tracking() const { return tracking_; }
  const RuleConfig& rule() const { return rule_; }
  /// beta values returned by the selector so far.
  const BetaSummary& beta_summary() const { return beta_; }

 private:
  void pull(std::size_t arm);
  LucbStep lucb_step();

  RuleConfig rule_;
  Threshold threshold_;
  BanditState state_;
  TrackingState tracking_;
  RewardSource rewards_;
  EpisodeRng rng_;
  std::optional<LucbStep> pending_lucb_;
  BetaSummary beta_;
};

EpisodeResult run_episode(const Instance& inst, const RuleConfig& rule, const EpisodeOptions& options);

}  // namespace toptwo
