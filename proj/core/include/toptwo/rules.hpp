#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toptwo/bandit_state.hpp"
#include "toptwo/numerics.hpp"
#include "toptwo/rng.hpp"

namespace toptwo {

struct LeaderSpec {
  enum class Kind { UCB, TS, EB };
  Kind kind = Kind::UCB;
  BonusSpec bonus = BonusSpec::mixture();
};

struct ChallengerSpec {
  enum class Kind { TC, TCI, RS };
  Kind kind = Kind::TC;
  std::uint64_t max_resamples = 10'000;
};

enum class Selector { TRACKING, SAMPLING };

struct BetaSpec {
  bool adaptive = false;
  double value = 0.5;  // used when not adaptive
};

enum class RuleFamily { TOP_TWO, LUCB, BETA_LUCB, TRACK_AND_STOP, UNIFORM };

/// Full description of a sampling rule. Leader, challenger and selector only
/// matter for TOP_TWO; BETA_LUCB reads the fixed beta.
struct RuleConfig {
  std::string name;
  RuleFamily family = RuleFamily::TOP_TWO;
  LeaderSpec leader;
  ChallengerSpec challenger;
  Selector selector = Selector::TRACKING;
  BetaSpec beta;

  void validate() const;
};

/// Builds a rule from its CLI name: ttucb, t3c, ttts, eb-tci, lucb, beta-lucb,
/// tas, uniform; Top Two names accept -adaptive, -tracking, -sampling and
/// (for ttucb) -gu suffixes. Throws std::invalid_argument on unknown names.
RuleConfig parse_rule(std::string_view name);

/// Names accepted without suffixes.
const std::vector<std::string>& base_rule_names();

/// Per-leader running averages of the adaptive proportions.
class TrackingState {
 public:
  explicit TrackingState(std::size_t num_arms) : avg_beta_(num_arms, 0.0), count_(num_arms, 0) {}

  /// Folds one more proportion into leader's average and returns the new average.
  double fold(std::size_t leader, double beta);
  double avg_beta(std::size_t leader) const { return avg_beta_.at(leader); }
  std::uint64_t count(std::size_t leader) const { return count_.at(leader); }

 private:
  std::vector<double> avg_beta_;
  std::vector<std::uint64_t> count_;
};

std::size_t ucb_leader(const BanditState& state, const BonusSpec& spec);
std::size_t ts_leader(const BanditState& state, RandomStream& rng);

/// Transportation-cost challenger. When some arm has a mean at least the
/// leader's, a uniformly random such arm is returned.
std::size_t tc_challenger(const BanditState& state, std::size_t leader, RandomStream& rng);
std::size_t tci_challenger(const BanditState& state, std::size_t leader);
/// Posterior re-sampling challenger; falls back to TC after max_resamples failures.
std::size_t rs_challenger(const BanditState& state, std::size_t leader, RandomStream& rng,
                          std::uint64_t max_resamples);

struct Selection {
  std::size_t chosen = 0;
  double beta_used = 0.0;
};

Selection select_arm(const RuleConfig& config, const BanditState& state, TrackingState& tracking,
                     std::size_t leader, std::size_t challenger, RandomStream& selector);

struct TopTwoStep {
  std::size_t leader = 0;
  std::size_t challenger = 0;
  std::size_t chosen = 0;
  double beta_used = 0.0;
};

TopTwoStep step_top_two(const RuleConfig& config, const BanditState& state, TrackingState& tracking,
                        EpisodeRng& rng);

struct LucbStep {
  std::vector<std::size_t> arms;  // both arms for LUCB, one for beta-LUCB
  bool stop = false;
  std::size_t recommendation = 0;
};

/// LUCB indices with bonus sqrt(2 c(n-1, delta) / N_i). When `beta` is set,
/// samples the empirical best with probability beta (beta-LUCB).
LucbStep step_lucb(const BanditState& state, const Threshold& threshold, std::optional<double> beta,
                   RandomStream& rng);

/// Track-and-Stop with D-tracking and forced exploration below sqrt(n) - K/2 pulls.
std::size_t step_track_and_stop(const BanditState& state);

/// Round robin: (n - 1) mod K.
std::size_t step_uniform(const BanditState& state);

}  // namespace toptwo
