#include "toptwo/experiment.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace toptwo {

const std::vector<std::string> kEpisodeCsvHeader = {
    "run_id", "family",    "instance_id", "means",   "rule",    "delta",       "threshold",
    "seed",   "stopping_time", "truncated", "recommended", "correct", "wall_seconds"};

void ExperimentSpec::validate() const {
  if (families.empty()) throw std::invalid_argument("experiment needs at least one family");
  if (rules.empty()) throw std::invalid_argument("experiment needs at least one rule");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (episodes == 0) throw std::invalid_argument("episodes must be at least 1");
  if (jobs == 0) throw std::invalid_argument("jobs must be at least 1");
  for (const auto& f : families) {
    f.validate();
    if (max_steps <= f.k) throw std::invalid_argument("max_steps must exceed the number of arms");
  }
  for (const auto& r : rules) r.validate();
}

std::uint64_t run_index(const ExperimentSpec& spec, std::size_t family, std::size_t rule, std::uint64_t episode) {
  return (static_cast<std::uint64_t>(family) * spec.rules.size() + rule) * spec.episodes + episode;
}

Instance experiment_instance(const InstanceFamily& family, std::uint64_t seed, std::uint64_t episode) {
  RandomStream rng(seed + episode, StreamId::kInstance);
  return generate(family, rng);
}

ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::function<void(std::uint64_t, std::uint64_t)>& progress) {
  spec.validate();
  const std::size_t n_fam = spec.families.size();
  const std::size_t n_rules = spec.rules.size();
  const std::uint64_t total = n_fam * n_rules * spec.episodes;

  std::vector<std::vector<Instance>> instances(n_fam);
  for (std::size_t f = 0; f < n_fam; ++f) {
    instances[f].reserve(spec.episodes);
    for (std::uint64_t e = 0; e < spec.episodes; ++e) {
      instances[f].push_back(experiment_instance(spec.families[f], spec.seed, e));
    }
  }

  ExperimentResult out;
  out.records.resize(total);
  out.episodes.resize(total);

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    while (true) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= total) return;
      {
        std::lock_guard lock(error_mutex);
        if (error) return;
      }
      const std::uint64_t e = idx % spec.episodes;
      const std::size_t r = (idx / spec.episodes) % n_rules;
      const std::size_t f = idx / (spec.episodes * n_rules);
      try {
        const Instance& inst = instances[f][e];
        EpisodeOptions opt;
        opt.delta = spec.delta;
        opt.threshold = spec.threshold;
        opt.seed = spec.seed + e;
        opt.max_steps = spec.max_steps;
        opt.checkpoint_every = spec.checkpoint_every;
        opt.record_wall_time = spec.record_wall_time;
        EpisodeResult res = run_episode(inst, spec.rules[r], opt);

        EpisodeRecord& rec = out.records[idx];
        rec.run_id = idx;
        rec.family = spec.families[f].label();
        rec.instance_id = e;
        rec.means.assign(inst.means().begin(), inst.means().end());
        rec.rule = spec.rules[r].name;
        rec.delta = spec.delta;
        rec.threshold = std::string(threshold_name(spec.threshold));
        rec.seed = opt.seed;
        rec.stopping_time = res.stopping_time;
        rec.truncated = res.truncated;
        rec.recommended = res.recommended;
        rec.correct = res.correct;
        rec.wall_seconds = res.wall_seconds;
        out.episodes[idx] = std::move(res);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
      const std::uint64_t finished = done.fetch_add(1) + 1;
      if (progress) progress(finished, total);
    }
  };

  const unsigned n_threads = static_cast<unsigned>(std::min<std::uint64_t>(spec.jobs, total));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::string_view threshold_name(ThresholdSpec::Kind kind) {
  return kind == ThresholdSpec::Kind::EXACT ? "exact" : "heuristic";
}

ThresholdSpec::Kind parse_threshold_kind(std::string_view name) {
  if (name == "exact") return ThresholdSpec::Kind::EXACT;
  if (name == "heuristic") return ThresholdSpec::Kind::HEURISTIC;
  throw std::invalid_argument("unknown threshold '" + std::string(name) + "' (expected exact or heuristic)");
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), end);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& s, std::size_t line_no, const char* column) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("episode csv line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
  }
  return value;
}

bool parse_bool(const std::string& s, std::size_t line_no, const char* column) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw std::runtime_error("episode csv line " + std::to_string(line_no) + ": bad " + column + " '" + s + "'");
}

}  // namespace

void write_episode_csv(std::ostream& out, const std::vector<EpisodeRecord>& records) {
  for (std::size_t i = 0; i < kEpisodeCsvHeader.size(); ++i) out << (i ? "," : "") << kEpisodeCsvHeader[i];
  out << '\n';
  for (const auto& r : records) {
    out << r.run_id << ',' << r.family << ',' << r.instance_id << ',';
    for (std::size_t i = 0; i < r.means.size(); ++i) out << (i ? ";" : "") << format_double(r.means[i]);
    out << ',' << r.rule << ',' << format_double(r.delta) << ',' << r.threshold << ',' << r.seed << ','
        << r.stopping_time << ',' << (r.truncated ? 1 : 0) << ',' << r.recommended << ',' << (r.correct ? 1 : 0)
        << ',' << format_double(r.wall_seconds) << '\n';
  }
}

std::vector<EpisodeRecord> read_episode_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("episode csv: empty input");
  if (split(line, ',') != kEpisodeCsvHeader) throw std::runtime_error("episode csv line 1: unexpected header");

  std::vector<EpisodeRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != kEpisodeCsvHeader.size()) {
      throw std::runtime_error("episode csv line " + std::to_string(line_no) + ": expected " +
                               std::to_string(kEpisodeCsvHeader.size()) + " fields, got " +
                               std::to_string(f.size()));
    }
    EpisodeRecord r;
    r.run_id = parse_number<std::uint64_t>(f[0], line_no, "run_id");
    r.family = f[1];
    r.instance_id = parse_number<std::uint64_t>(f[2], line_no, "instance_id");
    for (const auto& m : split(f[3], ';')) r.means.push_back(parse_number<double>(m, line_no, "means"));
    r.rule = f[4];
    r.delta = parse_number<double>(f[5], line_no, "delta");
    r.threshold = f[6];
    r.seed = parse_number<std::uint64_t>(f[7], line_no, "seed");
    r.stopping_time = parse_number<std::uint64_t>(f[8], line_no, "stopping_time");
    r.truncated = parse_bool(f[9], line_no, "truncated");
    r.recommended = parse_number<std::size_t>(f[10], line_no, "recommended");
    r.correct = parse_bool(f[11], line_no, "correct");
    r.wall_seconds = parse_number<double>(f[12], line_no, "wall_seconds");
    out.push_back(std::move(r));
  }
  return out;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<RuleSummary> summarize(const std::vector<EpisodeRecord>& records) {
  std::vector<std::pair<std::string, std::string>> order;
  std::map<std::pair<std::string, std::string>, std::vector<const EpisodeRecord*>> groups;
  for (const auto& r : records) {
    auto key = std::make_pair(r.family, r.rule);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }

  std::vector<RuleSummary> out;
  for (const auto& key : order) {
    const auto& rows = groups[key];
    RuleSummary s;
    s.family = key.first;
    s.rule = key.second;
    s.episodes = rows.size();
    std::vector<double> tau;
    tau.reserve(rows.size());
    double wall = 0.0;
    for (const auto* r : rows) {
      tau.push_back(static_cast<double>(r->stopping_time));
      if (!r->correct) ++s.errors;
      if (r->truncated) ++s.truncated;
      wall += r->wall_seconds;
    }
    std::sort(tau.begin(), tau.end());
    double sum = 0.0;
    for (double t : tau) sum += t;
    s.mean = sum / static_cast<double>(tau.size());
    double ss = 0.0;
    for (double t : tau) ss += (t - s.mean) * (t - s.mean);
    s.std = tau.size() > 1 ? std::sqrt(ss / static_cast<double>(tau.size() - 1)) : 0.0;
    s.min = tau.front();
    s.q25 = quantile(tau, 0.25);
    s.median = quantile(tau, 0.5);
    s.q75 = quantile(tau, 0.75);
    s.max = tau.back();
    s.error_rate = static_cast<double>(s.errors) / static_cast<double>(s.episodes);
    s.mean_wall_seconds = wall / static_cast<double>(s.episodes);
    out.push_back(std::move(s));
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<RuleSummary>& summaries) {
  out << "family,rule,episodes,mean,std,min,q25,median,q75,max,error_rate,errors,truncated,mean_wall_seconds\n";
  for (const auto& s : summaries) {
    out << s.family << ',' << s.rule << ',' << s.episodes << ',' << format_double(s.mean) << ','
        << format_double(s.std) << ',' << format_double(s.min) << ',' << format_double(s.q25) << ','
        << format_double(s.median) << ',' << format_double(s.q75) << ',' << format_double(s.max) << ','
        << format_double(s.error_rate) << ',' << s.errors << ',' << s.truncated << ','
        << format_double(s.mean_wall_seconds) << '\n';
  }
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw std::invalid_argument("wilson interval needs at least one trial");
  if (successes > trials) throw std::invalid_argument("wilson interval: successes exceed trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::vector<ErrorPoint> error_curves(const ExperimentSpec& spec, const ExperimentResult& result) {
  std::vector<ErrorPoint> out;
  const std::uint64_t every = spec.checkpoint_every;
  if (every == 0) return out;
  for (std::size_t f = 0; f < spec.families.size(); ++f) {
    for (std::size_t r = 0; r < spec.rules.size(); ++r) {
      std::vector<double> tau;
      for (std::uint64_t e = 0; e < spec.episodes; ++e) {
        tau.push_back(static_cast<double>(result.episodes[run_index(spec, f, r, e)].stopping_time));
      }
      std::sort(tau.begin(), tau.end());
      const double median = quantile(tau, 0.5);
      for (std::uint64_t j = 0; static_cast<double>((j + 1) * every) <= median; ++j) {
        std::uint64_t running = 0;
        std::uint64_t wrong = 0;
        for (std::uint64_t e = 0; e < spec.episodes; ++e) {
          const auto& traj = result.episodes[run_index(spec, f, r, e)].error_trajectory;
          if (j < traj.size()) {
            ++running;
            wrong += traj[j];
          }
        }
        if (running == 0) break;
        ErrorPoint p;
        p.family = spec.families[f].label();
        p.rule = spec.rules[r].name;
        p.n = (j + 1) * every;
        p.running = running;
        p.error_rate = static_cast<double>(wrong) / static_cast<double>(running);
        p.interval = wilson_interval(wrong, running);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

void write_error_csv(std::ostream& out, const std::vector<ErrorPoint>& points) {
  out << "rule,n,error_rate,wilson_lo,wilson_hi,family,running\n";
  for (const auto& p : points) {
    out << p.rule << ',' << p.n << ',' << format_double(p.error_rate) << ',' << format_double(p.interval.lo) << ','
        << format_double(p.interval.hi) << ',' << p.family << ',' << p.running << '\n';
  }
}

}  // namespace toptwo
