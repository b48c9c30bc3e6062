#include "toptwo/bandit_state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace toptwo {

BanditState::BanditState(std::size_t num_arms)
    : pulls_(num_arms, 0),
      sums_(num_arms, 0.0),
      leader_counts_(num_arms, 0),
      pair_counts_(num_arms * num_arms, 0) {
  if (num_arms < 2) throw std::invalid_argument("a bandit needs at least two arms");
}

void BanditState::check_arm(std::size_t arm) const {
  if (arm >= pulls_.size()) {
    throw std::out_of_range("arm index " + std::to_string(arm) + " out of range");
  }
}

double BanditState::mean(std::size_t arm) const {
  check_arm(arm);
  if (pulls_[arm] == 0) throw std::logic_error("mean of an arm that was never pulled");
  return sums_[arm] / static_cast<double>(pulls_[arm]);
}

std::vector<double> BanditState::means() const {
  std::vector<double> out(num_arms());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = mean(i);
  return out;
}

std::uint64_t BanditState::pair_count(std::size_t leader, std::size_t arm) const {
  check_arm(leader);
  check_arm(arm);
  return pair_counts_[leader * num_arms() + arm];
}

bool BanditState::initialized() const {
  return std::all_of(pulls_.begin(), pulls_.end(), [](std::uint64_t p) { return p > 0; });
}

std::size_t BanditState::empirical_best() const {
  std::size_t best = 0;
  double best_mean = mean(0);
  for (std::size_t i = 1; i < num_arms(); ++i) {
    const double m = mean(i);
    if (m > best_mean) {
      best = i;
      best_mean = m;
    }
  }
  return best;
}

void BanditState::record(std::size_t arm, double sample) {
  check_arm(arm);
  ++pulls_[arm];
  sums_[arm] += sample;
  ++round_;
}

void BanditState::observe(std::size_t leader, std::size_t challenger, std::size_t chosen, double sample) {
  check_arm(leader);
  check_arm(challenger);
  check_arm(chosen);
  if (chosen != leader && chosen != challenger) {
    throw std::invalid_argument("the pulled arm must be the leader or the challenger");
  }
  ++leader_counts_[leader];
  ++pair_counts_[leader * num_arms() + chosen];
  last_leader_ = leader;
  last_challenger_ = challenger;
  record(chosen, sample);
}

StoppingDecision glr_check(const BanditState& state, const Threshold& threshold) {
  if (!state.initialized()) throw std::logic_error("stopping rule needs every arm pulled once");

  StoppingDecision d;
  d.recommendation = state.empirical_best();
  const std::size_t best = d.recommendation;
  const double best_mean = state.mean(best);
  const double inv_best = 1.0 / static_cast<double>(state.pulls(best));
  d.statistic = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.num_arms(); ++i) {
    if (i == best) continue;
    const double z = (best_mean - state.mean(i)) / std::sqrt(inv_best + 1.0 / static_cast<double>(state.pulls(i)));
    d.statistic = std::min(d.statistic, z);
  }
  const double n_minus_one = std::max<double>(1.0, static_cast<double>(state.samples()));
  d.threshold_value = std::sqrt(2.0 * threshold(n_minus_one));
  d.stop = d.statistic >= d.threshold_value;
  return d;
}

StoppingDecision glr_check(const BanditState& state, double delta, const ThresholdSpec& spec) {
  return glr_check(state, Threshold(spec, delta));
}

std::vector<double> empirical_allocation(const BanditState& state) {
  if (state.samples() == 0) throw std::logic_error("empirical allocation needs at least one sample");
  std::vector<double> out(state.num_arms());
  const double total = static_cast<double>(state.samples());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(state.pulls(i)) / total;
  return out;
}

}  // namespace toptwo
