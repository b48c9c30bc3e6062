#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "toptwo/characteristic.hpp"
#include "toptwo/experiment.hpp"

#ifndef TOPTWO_VERSION
#define TOPTWO_VERSION "0.0.0"
#endif

namespace toptwo::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::optional<std::string> out_dir;
};

json result_json(const CharacteristicResult& r) {
  return {{"time", r.time}, {"allocation", r.allocation}, {"radius", r.radius}};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

int cmd_run(const std::string& path, const GlobalFlags& g, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = load_config(path);
  if (g.seed) config.seed = *g.seed;
  if (g.jobs) config.jobs = *g.jobs;
  if (g.out_dir) config.out_dir = *g.out_dir;
  const ExperimentSpec spec = config.to_spec();

  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::uint64_t cells = spec.families.size() * spec.rules.size();
  err << "running " << cells << " cells x " << spec.episodes << " episodes on " << spec.jobs << " thread(s)\n";
  const ExperimentResult result = run_experiment(spec);

  std::ostringstream episodes_csv;
  write_episode_csv(episodes_csv, result.records);
  write_file(dir / "episodes.csv", episodes_csv.str());

  std::istringstream reread(episodes_csv.str());
  const auto summaries = summarize(read_episode_csv(reread));
  std::ostringstream summary_csv;
  write_summary_csv(summary_csv, summaries);
  write_file(dir / "summary.csv", summary_csv.str());

  std::ostringstream errors_csv;
  write_error_csv(errors_csv, error_curves(spec, result));
  write_file(dir / "errors.csv", errors_csv.str());

  const std::string canonical = serialize_config(config);
  json manifest = {
      {"version", TOPTWO_VERSION},
      {"config_hash", fnv1a_hex(canonical)},
      {"seed", config.seed},
      {"config", canonical},
      {"episodes", result.records.size()},
      {"files", {"episodes.csv", "summary.csv", "errors.csv"}},
  };
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& s : summaries) {
    out << s.family << ' ' << s.rule << ": mean tau " << format_double(s.mean) << ", median "
        << format_double(s.median) << ", error rate " << format_double(s.error_rate) << ", truncated "
        << s.truncated << '\n';
  }
  return kOk;
}

int cmd_oracle(const std::vector<double>& means, std::optional<double> beta, bool as_json, std::ostream& out) {
  const Instance inst(means);
  const auto gaps = gaps_and_hardness(inst);
  const auto star = solve_unconstrained(inst);
  json j = {{"means", means}, {"best_arm", gaps.best_arm}, {"hardness", gaps.hardness},
            {"unconstrained", result_json(star)}};
  std::optional<CharacteristicResult> constrained;
  if (beta) {
    if (!(*beta > 0.0 && *beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
    constrained = solve_constrained(inst, *beta);
    j["constrained"] = result_json(*constrained);
    j["constrained"]["beta"] = *beta;
    j["ratio"] = constrained->time / star.time;
  }
  if (as_json) {
    out << j.dump() << '\n';
    return kOk;
  }
  auto vec = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
    return s;
  };
  out << "best arm   " << gaps.best_arm << "\nH          " << format_double(gaps.hardness) << "\nT*         "
      << format_double(star.time) << "\nw*         " << vec(star.allocation) << "\nr          "
      << format_double(star.radius) << '\n';
  if (constrained) {
    out << "T*_beta    " << format_double(constrained->time) << "\nw*_beta    " << vec(constrained->allocation)
        << "\nr_beta     " << format_double(constrained->radius) << "\nratio      "
        << format_double(constrained->time / star.time) << '\n';
  }
  return kOk;
}

int cmd_bound(const std::vector<double>& means, const BoundParams& p, bool uniform, std::ostream& out) {
  const Instance inst(means);
  if (uniform) {
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    const auto u = uniform_bound(inst, p.delta, p.alpha, p.s);
    json j = {{"means", means},         {"delta", u.delta},        {"alpha", u.alpha},
              {"s", u.s},               {"slope", u.slope},        {"t1_delta", u.t1_delta},
              {"h3_term", u.h3_term},   {"total", u.total}};
    out << j.dump() << '\n';
    return kOk;
  }
  const auto b = theorem2_bound(inst, p);
  json j = {
      {"means", means},
      {"params",
       {{"delta", p.delta}, {"beta", p.beta}, {"alpha", p.alpha}, {"s", p.s}, {"eps", p.eps}, {"w0", p.w0}}},
      {"t_beta", b.t_beta},
      {"w_beta", b.w_beta},
      {"hardness", b.hardness},
      {"d_mu", b.d_mu},
      {"a_mu", b.a_mu},
      {"t0_delta", b.t0_delta},
      {"c_mu", b.c_mu},
      {"c0", b.c0},
      {"c1", b.c1},
      {"c2", b.c2},
      {"total", b.total},
      {"c_mu_tilde", b.c_mu_tilde},
      {"total_mixture", b.total_mixture},
      {"lower_bound_line", lower_bound_line(inst, p.delta)},
  };
  out << j.dump() << '\n';
  return kOk;
}

int cmd_instances(const InstanceFamily& family, std::uint64_t count, std::uint64_t seed, std::ostream& out) {
  family.validate();
  out << "instance_id,family,best_arm,hardness,means\n";
  for (std::uint64_t e = 0; e < count; ++e) {
    const Instance inst = experiment_instance(family, seed, e);
    const auto gaps = gaps_and_hardness(inst);
    out << e << ',' << family.label() << ',' << gaps.best_arm << ',' << format_double(gaps.hardness) << ',';
    for (std::size_t i = 0; i < inst.num_arms(); ++i) out << (i ? ";" : "") << format_double(inst.mean(i));
    out << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Top Two best-arm identification lab", "toptwo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", TOPTWO_VERSION);

  GlobalFlags g;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string out_dir;
  auto* seed_opt = app.add_option("--seed", seed, "Base seed")->capture_default_str();
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  auto* dir_opt = app.add_option("--out-dir", out_dir, "Output directory for run");
  for (auto* o : {seed_opt, jobs_opt, dir_opt}) o->configurable(false);

  auto* run = app.add_subcommand("run", "Run a Monte Carlo experiment described by a YAML config");
  std::string config_path;
  run->add_option("config", config_path, "Experiment config (YAML)")->required();

  auto* oracle = app.add_subcommand("oracle", "Characteristic times and optimal allocations");
  std::vector<double> oracle_means;
  std::optional<double> oracle_beta;
  bool oracle_json = false;
  oracle->add_option("means", oracle_means, "Arm means")->required()->expected(2, CLI::detail::expected_max_vector_size);
  oracle->add_option("--beta", oracle_beta, "Also solve with the best-arm weight fixed to beta");
  oracle->add_flag("--json", oracle_json, "Emit one JSON object");

  auto* bound = app.add_subcommand("bound", "Non-asymptotic upper bound on the expected stopping time");
  std::vector<double> bound_means;
  BoundParams bp;
  bool bound_uniform = false;
  bound->add_option("means", bound_means, "Arm means")->required()->expected(2, CLI::detail::expected_max_vector_size);
  bound->add_option("--delta", bp.delta, "Confidence level")->capture_default_str();
  bound->add_option("--beta", bp.beta, "Target leader proportion")->capture_default_str();
  bound->add_option("--alpha", bp.alpha, "Concentration parameter alpha")->capture_default_str();
  bound->add_option("--s", bp.s, "Concentration parameter s")->capture_default_str();
  bound->add_option("--eps", bp.eps, "Convergence slack epsilon in (0, 1]")->capture_default_str();
  bound->add_option("--w0", bp.w0, "Allocation floor w0 in [0, 1/(K-1)]")->capture_default_str();
  bound->add_flag("--uniform", bound_uniform, "Bound for uniform sampling instead");

  auto* instances = app.add_subcommand("instances", "Print generated instances as CSV");
  std::string family_name;
  InstanceFamily fam;
  std::vector<double> explicit_means;
  std::uint64_t count = 1;
  instances->add_option("family", family_name, "random-k10, one-sparse, alpha, equal-means, close-competitors, explicit")
      ->required();
  instances->add_option("--k", fam.k, "Number of arms")->capture_default_str();
  instances->add_option("--alpha", fam.alpha, "Exponent of the alpha family")->capture_default_str();
  instances->add_option("--top", fam.top, "Best mean of equal-means")->capture_default_str();
  instances->add_option("--gap", fam.gap, "Gap of equal-means")->capture_default_str();
  instances->add_option("--means", explicit_means, "Means of the explicit family");
  instances->add_option("--count", count, "Number of instances")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << TOPTWO_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  if (seed_opt->count()) g.seed = seed;
  if (jobs_opt->count()) g.jobs = jobs;
  if (dir_opt->count()) g.out_dir = out_dir;

  try {
    if (*run) return cmd_run(config_path, g, out, err);
    if (*oracle) return cmd_oracle(oracle_means, oracle_beta, oracle_json, out);
    if (*bound) return cmd_bound(bound_means, bp, bound_uniform, out);
    if (*instances) {
      fam.kind = parse_family_kind(family_name);
      if (fam.kind == InstanceFamily::Kind::EXPLICIT) {
        fam.means = explicit_means;
        fam.k = explicit_means.size();
      }
      return cmd_instances(fam, count, g.seed.value_or(0), out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace toptwo::cli
