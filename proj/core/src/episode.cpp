#include "toptwo/episode.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <utility>

namespace toptwo {

RewardSource::RewardSource(const Instance& inst, std::uint64_t seed)
    : means_(inst.means().begin(), inst.means().end()) {
  streams_.reserve(means_.size());
  for (std::size_t i = 0; i < means_.size(); ++i) streams_.emplace_back(seed, StreamId::kObservations, i);
}

double RewardSource::draw(std::size_t arm) { return means_.at(arm) + streams_.at(arm).gaussian(); }

Episode::Episode(const Instance& inst, RuleConfig rule, const EpisodeOptions& options)
    : rule_(std::move(rule)),
      threshold_(ThresholdSpec{options.threshold, inst.num_arms()}, options.delta),
      state_(inst.num_arms()),
      tracking_(inst.num_arms()),
      rewards_(inst, options.seed),
      rng_(options.seed) {
  rule_.validate();
  for (std::size_t i = 0; i < inst.num_arms(); ++i) pull(i);
}

void Episode::pull(std::size_t arm) { state_.record(arm, rewards_.draw(arm)); }

LucbStep Episode::lucb_step() {
  std::optional<double> beta;
  if (rule_.family == RuleFamily::BETA_LUCB) beta = rule_.beta.value;
  return step_lucb(state_, threshold_, beta, rng_.selector);
}

std::optional<std::size_t> Episode::check_stop() {
  if (rule_.family == RuleFamily::LUCB || rule_.family == RuleFamily::BETA_LUCB) {
    pending_lucb_ = lucb_step();
    if (pending_lucb_->stop) return pending_lucb_->recommendation;
    return std::nullopt;
  }
  const auto d = glr_check(state_, threshold_);
  if (d.stop) return d.recommendation;
  return std::nullopt;
}

void Episode::sample() {
  switch (rule_.family) {
    case RuleFamily::TOP_TWO: {
      const auto step = step_top_two(rule_, state_, tracking_, rng_);
      state_.observe(step.leader, step.challenger, step.chosen, rewards_.draw(step.chosen));
      if (beta_.count == 0) {
        beta_.min = beta_.max = step.beta_used;
      } else {
        beta_.min = std::min(beta_.min, step.beta_used);
        beta_.max = std::max(beta_.max, step.beta_used);
      }
      ++beta_.count;
      beta_.mean += (step.beta_used - beta_.mean) / static_cast<double>(beta_.count);
      break;
    }
    case RuleFamily::LUCB:
    case RuleFamily::BETA_LUCB: {
      const LucbStep step = pending_lucb_ ? std::move(*pending_lucb_) : lucb_step();
      pending_lucb_.reset();
      for (std::size_t arm : step.arms) pull(arm);
      break;
    }
    case RuleFamily::TRACK_AND_STOP:
      pull(step_track_and_stop(state_));
      break;
    case RuleFamily::UNIFORM:
      pull(step_uniform(state_));
      break;
  }
}

EpisodeResult run_episode(const Instance& inst, const RuleConfig& rule, const EpisodeOptions& options) {
  const auto best = inst.unique_best();
  if (!best) throw DegenerateInstance("degenerate instance: the best arm is not unique");
  if (options.max_steps <= inst.num_arms()) throw std::invalid_argument("max_steps must exceed the number of arms");

  const auto start = std::chrono::steady_clock::now();
  Episode episode(inst, rule, options);
  EpisodeResult result;
  const std::uint64_t every = options.checkpoint_every;
  std::uint64_t next_checkpoint = every;

  while (true) {
    const std::uint64_t n = episode.state().round();
    if (n > options.max_steps) {
      result.truncated = true;
      result.stopping_time = options.max_steps;
      result.recommended = episode.state().empirical_best();
      result.correct = false;
      break;
    }
    if (const auto rec = episode.check_stop()) {
      result.stopping_time = n;
      result.recommended = *rec;
      result.correct = *rec == *best;
      // a two-pull round can step over the last checkpoint before n
      while (every > 0 && next_checkpoint < n) {
        result.error_trajectory.push_back(result.correct ? 0 : 1);
        next_checkpoint += every;
      }
      break;
    }
    if (every > 0) {
      const std::uint8_t wrong = episode.state().empirical_best() != *best ? 1 : 0;
      while (next_checkpoint <= n) {
        result.error_trajectory.push_back(wrong);
        next_checkpoint += every;
      }
    }
    episode.sample();
  }

  if (rule.family == RuleFamily::TOP_TWO && episode.beta_summary().count > 0) result.beta = episode.beta_summary();
  if (options.record_wall_time) {
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return result;
}

}  // namespace toptwo
