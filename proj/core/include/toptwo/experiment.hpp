#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "toptwo/episode.hpp"
#include "toptwo/instance_family.hpp"
#include "toptwo/rules.hpp"

namespace toptwo {

struct ExperimentSpec {
  std::vector<InstanceFamily> families;
  std::vector<RuleConfig> rules;
  double delta = 0.1;
  ThresholdSpec::Kind threshold = ThresholdSpec::Kind::HEURISTIC;
  std::uint64_t episodes = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t checkpoint_every = 10;
  bool record_wall_time = true;

  void validate() const;
};

/// One row of the episode CSV.
struct EpisodeRecord {
  std::uint64_t run_id = 0;
  std::string family;
  std::uint64_t instance_id = 0;
  std::vector<double> means;
  std::string rule;
  double delta = 0.0;
  std::string threshold;
  std::uint64_t seed = 0;
  std::uint64_t stopping_time = 0;
  bool truncated = false;
  std::size_t recommended = 0;
  bool correct = false;
  double wall_seconds = 0.0;

  bool operator==(const EpisodeRecord&) const = default;
};

struct ExperimentResult {
  std::vector<EpisodeRecord> records;        // canonical order: family, rule, episode
  std::vector<EpisodeResult> episodes;       // aligned with records
};

/// Canonical index of (family, rule, episode).
std::uint64_t run_index(const ExperimentSpec& spec, std::size_t family, std::size_t rule, std::uint64_t episode);

/// Instance used by every rule at (family, episode): drawn from the instance
/// stream seeded with seed + episode.
Instance experiment_instance(const InstanceFamily& family, std::uint64_t seed, std::uint64_t episode);

/// Runs every (family, rule, episode) cell on `spec.jobs` threads. Output
/// does not depend on the number of threads. `progress` (optional) is called
/// from worker threads with the number of finished episodes.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::function<void(std::uint64_t done, std::uint64_t total)>& progress = {});

std::string_view threshold_name(ThresholdSpec::Kind kind);
ThresholdSpec::Kind parse_threshold_kind(std::string_view name);

/// Shortest round-trip decimal representation.
std::string format_double(double x);

extern const std::vector<std::string> kEpisodeCsvHeader;

void write_episode_csv(std::ostream& out, const std::vector<EpisodeRecord>& records);
/// Throws std::runtime_error naming the line on malformed input.
std::vector<EpisodeRecord> read_episode_csv(std::istream& in);

struct RuleSummary {
  std::string family;
  std::string rule;
  std::uint64_t episodes = 0;
  double mean = 0.0;
  double std = 0.0;
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
  double error_rate = 0.0;
  std::uint64_t errors = 0;
  std::uint64_t truncated = 0;
  double mean_wall_seconds = 0.0;
};

/// Aggregates per (family, rule), in first-appearance order.
std::vector<RuleSummary> summarize(const std::vector<EpisodeRecord>& records);
void write_summary_csv(std::ostream& out, const std::vector<RuleSummary>& summaries);

/// Linear-interpolation quantile of sorted data, q in [0, 1].
double quantile(const std::vector<double>& sorted, double q);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 0.0;
};

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

struct ErrorPoint {
  std::string family;
  std::string rule;
  std::uint64_t n = 0;
  std::uint64_t running = 0;  // episodes with stopping_time > n
  double error_rate = 0.0;
  WilsonInterval interval;
};

/// Error before stopping, averaged over the episodes still running at n, for
/// checkpoints up to the median stopping time of each (family, rule).
std::vector<ErrorPoint> error_curves(const ExperimentSpec& spec, const ExperimentResult& result);
void write_error_csv(std::ostream& out, const std::vector<ErrorPoint>& points);

}  // namespace toptwo
