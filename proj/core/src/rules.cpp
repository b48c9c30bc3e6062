#include "toptwo/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "toptwo/characteristic.hpp"
#include "toptwo/instance.hpp"

namespace toptwo {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() > suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

RuleConfig top_two(std::string_view name, LeaderSpec::Kind leader, ChallengerSpec::Kind challenger,
                   Selector selector) {
  RuleConfig c;
  c.name = std::string(name);
  c.family = RuleFamily::TOP_TWO;
  c.leader.kind = leader;
  c.leader.bonus = leader == LeaderSpec::Kind::EB ? BonusSpec::zero() : BonusSpec::mixture();
  c.challenger.kind = challenger;
  c.selector = selector;
  return c;
}

std::size_t argmax(const std::vector<double>& values) {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

}  // namespace

void RuleConfig::validate() const {
  if (family == RuleFamily::TOP_TWO || family == RuleFamily::BETA_LUCB) {
    if (!beta.adaptive && !(beta.value > 0.0 && beta.value < 1.0)) {
      throw std::invalid_argument("rule '" + name + "': beta must lie in (0, 1)");
    }
  }
  if (family == RuleFamily::BETA_LUCB && beta.adaptive) {
    throw std::invalid_argument("rule '" + name + "': beta-LUCB needs a fixed beta");
  }
  if (family == RuleFamily::TOP_TWO && leader.kind == LeaderSpec::Kind::UCB) leader.bonus.validate();
}

const std::vector<std::string>& base_rule_names() {
  static const std::vector<std::string> names = {"ttucb", "t3c",       "ttts", "eb-tci",
                                                 "lucb",  "beta-lucb", "tas",  "uniform"};
  return names;
}

RuleConfig parse_rule(std::string_view name) {
  std::string_view base = name;
  std::optional<Selector> selector;
  bool adaptive = false;
  bool union_bonus = false;
  for (bool stripped = true; stripped;) {
    stripped = false;
    if (ends_with(base, "-adaptive")) {
      adaptive = true;
      base.remove_suffix(9);
      stripped = true;
    } else if (ends_with(base, "-tracking")) {
      selector = Selector::TRACKING;
      base.remove_suffix(9);
      stripped = true;
    } else if (ends_with(base, "-sampling")) {
      selector = Selector::SAMPLING;
      base.remove_suffix(9);
      stripped = true;
    } else if (ends_with(base, "-gu")) {
      union_bonus = true;
      base.remove_suffix(3);
      stripped = true;
    }
  }

  RuleConfig c;
  using L = LeaderSpec::Kind;
  using C = ChallengerSpec::Kind;
  if (base == "ttucb") {
    c = top_two(name, L::UCB, C::TC, Selector::TRACKING);
    if (union_bonus) c.leader.bonus = BonusSpec::union_bound();
  } else if (base == "t3c") {
    c = top_two(name, L::TS, C::TC, Selector::SAMPLING);
  } else if (base == "ttts") {
    c = top_two(name, L::TS, C::RS, Selector::SAMPLING);
  } else if (base == "eb-tci") {
    c = top_two(name, L::EB, C::TCI, Selector::SAMPLING);
  } else {
    const bool has_suffix = base != name;
    if (has_suffix) throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
    c.name = std::string(name);
    if (base == "lucb") {
      c.family = RuleFamily::LUCB;
    } else if (base == "beta-lucb") {
      c.family = RuleFamily::BETA_LUCB;
    } else if (base == "tas") {
      c.family = RuleFamily::TRACK_AND_STOP;
    } else if (base == "uniform") {
      c.family = RuleFamily::UNIFORM;
    } else {
      throw std::invalid_argument("unknown rule '" + std::string(name) + "'");
    }
    return c;
  }
  if (union_bonus && base != "ttucb") {
    throw std::invalid_argument("the -gu suffix only applies to ttucb: '" + std::string(name) + "'");
  }
  if (selector) c.selector = *selector;
  c.beta.adaptive = adaptive;
  return c;
}

double TrackingState::fold(std::size_t leader, double beta) {
  auto& n = count_.at(leader);
  auto& avg = avg_beta_.at(leader);
  ++n;
  avg += (beta - avg) / static_cast<double>(n);
  return avg;
}

std::size_t ucb_leader(const BanditState& state, const BonusSpec& spec) {
  const double g = bonus(spec, static_cast<double>(state.round()));
  std::vector<double> index(state.num_arms());
  for (std::size_t i = 0; i < index.size(); ++i) {
    index[i] = state.mean(i) + std::sqrt(g / static_cast<double>(state.pulls(i)));
  }
  return argmax(index);
}

namespace {

std::vector<double> posterior_draw(const BanditState& state, RandomStream& rng) {
  std::vector<double> theta(state.num_arms());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = state.mean(i) + rng.gaussian() / std::sqrt(static_cast<double>(state.pulls(i)));
  }
  return theta;
}

}  // namespace

std::size_t ts_leader(const BanditState& state, RandomStream& rng) { return argmax(posterior_draw(state, rng)); }

std::size_t tc_challenger(const BanditState& state, std::size_t leader, RandomStream& rng) {
  const std::size_t k = state.num_arms();
  const double leader_mean = state.mean(leader);
  std::vector<std::size_t> zero_cost;
  for (std::size_t i = 0; i < k; ++i) {
    if (i != leader && state.mean(i) >= leader_mean) zero_cost.push_back(i);
  }
  if (zero_cost.size() == 1) return zero_cost.front();
  if (!zero_cost.empty()) return zero_cost[rng.index(zero_cost.size())];

  const double inv_leader = 1.0 / static_cast<double>(state.pulls(leader));
  std::size_t best = k;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == leader) continue;
    const double cost =
        (leader_mean - state.mean(i)) / std::sqrt(inv_leader + 1.0 / static_cast<double>(state.pulls(i)));
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return best;
}

std::size_t tci_challenger(const BanditState& state, std::size_t leader) {
  const std::size_t k = state.num_arms();
  const double leader_mean = state.mean(leader);
  const double inv_leader = 1.0 / static_cast<double>(state.pulls(leader));
  std::size_t best = k;
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == leader) continue;
    const double n_i = static_cast<double>(state.pulls(i));
    const double gap = leader_mean - state.mean(i);
    const double transport = gap > 0.0 ? gap * gap / (2.0 * (inv_leader + 1.0 / n_i)) : 0.0;
    const double cost = transport + std::log(n_i);
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return best;
}

std::size_t rs_challenger(const BanditState& state, std::size_t leader, RandomStream& rng,
                          std::uint64_t max_resamples) {
  for (std::uint64_t t = 0; t < max_resamples; ++t) {
    const std::size_t top = argmax(posterior_draw(state, rng));
    if (top != leader) return top;
  }
  return tc_challenger(state, leader, rng);
}

Selection select_arm(const RuleConfig& config, const BanditState& state, TrackingState& tracking,
                     std::size_t leader, std::size_t challenger, RandomStream& selector) {
  if (leader == challenger) throw std::logic_error("leader and challenger must differ");

  double beta = config.beta.value;
  double beta_now = beta;
  if (config.beta.adaptive) {
    const double n_leader = static_cast<double>(state.pulls(leader));
    const double n_challenger = static_cast<double>(state.pulls(challenger));
    beta_now = n_challenger / (n_leader + n_challenger);
    const double average = tracking.fold(leader, beta_now);
    beta = config.selector == Selector::TRACKING ? average : beta_now;
  }

  Selection out;
  out.beta_used = beta;
  if (config.selector == Selector::TRACKING) {
    const double target = beta * static_cast<double>(state.leader_count(leader) + 1);
    out.chosen = static_cast<double>(state.pair_count(leader, leader)) <= target ? leader : challenger;
  } else {
    out.chosen = selector.bernoulli(beta) ? leader : challenger;
  }
  return out;
}

TopTwoStep step_top_two(const RuleConfig& config, const BanditState& state, TrackingState& tracking,
                        EpisodeRng& rng) {
  TopTwoStep step;
  switch (config.leader.kind) {
    case LeaderSpec::Kind::UCB:
      step.leader = ucb_leader(state, config.leader.bonus);
      break;
    case LeaderSpec::Kind::EB:
      step.leader = ucb_leader(state, BonusSpec::zero());
      break;
    case LeaderSpec::Kind::TS:
      step.leader = ts_leader(state, rng.leader);
      break;
  }
  switch (config.challenger.kind) {
    case ChallengerSpec::Kind::TC:
      step.challenger = tc_challenger(state, step.leader, rng.challenger);
      break;
    case ChallengerSpec::Kind::TCI:
      step.challenger = tci_challenger(state, step.leader);
      break;
    case ChallengerSpec::Kind::RS:
      step.challenger = rs_challenger(state, step.leader, rng.challenger, config.challenger.max_resamples);
      break;
  }
  const auto sel = select_arm(config, state, tracking, step.leader, step.challenger, rng.selector);
  step.chosen = sel.chosen;
  step.beta_used = sel.beta_used;
  return step;
}

LucbStep step_lucb(const BanditState& state, const Threshold& threshold, std::optional<double> beta,
                   RandomStream& rng) {
  const std::size_t k = state.num_arms();
  const double c = threshold(std::max<double>(1.0, static_cast<double>(state.samples())));
  const std::size_t best = state.empirical_best();
  auto width = [&](std::size_t i) { return std::sqrt(2.0 * c / static_cast<double>(state.pulls(i))); };

  std::size_t challenger = k;
  double challenger_ucb = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == best) continue;
    const double u = state.mean(i) + width(i);
    if (u > challenger_ucb) {
      challenger_ucb = u;
      challenger = i;
    }
  }

  LucbStep out;
  out.recommendation = best;
  out.stop = state.mean(best) - width(best) >= challenger_ucb;
  if (beta) {
    out.arms = {rng.bernoulli(*beta) ? best : challenger};
  } else {
    out.arms = {best, challenger};
  }
  return out;
}

std::size_t step_track_and_stop(const BanditState& state) {
  const std::size_t k = state.num_arms();
  const double n = static_cast<double>(state.round());
  const auto pulls = state.pulls();
  const std::size_t least = static_cast<std::size_t>(std::min_element(pulls.begin(), pulls.end()) - pulls.begin());
  if (static_cast<double>(pulls[least]) < std::sqrt(n) - 0.5 * static_cast<double>(k)) return least;

  std::vector<double> w;
  try {
    w = solve_unconstrained(Instance(state.means())).allocation;
  } catch (const DegenerateInstance&) {
    return least;
  }
  std::vector<double> deficit(k);
  for (std::size_t i = 0; i < k; ++i) deficit[i] = n * w[i] - static_cast<double>(pulls[i]);
  return argmax(deficit);
}

std::size_t step_uniform(const BanditState& state) { return static_cast<std::size_t>(state.samples() % state.num_arms()); }

}  // namespace toptwo
