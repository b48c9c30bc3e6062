#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "toptwo/rules.hpp"

namespace toptwo::cli {

namespace {

std::string where(const std::string& source, const YAML::Node& node) {
  const auto mark = node.Mark();
  if (mark.line < 0) return source;
  return source + ":" + std::to_string(mark.line + 1);
}

void check_keys(const YAML::Node& map, const std::set<std::string>& allowed, const std::string& source,
                const std::string& context) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.contains(key)) {
      throw ConfigError(where(source, kv.first) + ": unknown key '" + key + "' in " + context);
    }
  }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key, const std::string& source) {
  if (!node.IsScalar()) throw ConfigError(where(source, node) + ": '" + key + "' must be a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(where(source, node) + ": bad value '" + node.Scalar() + "' for '" + key + "'");
  }
}

InstanceFamily parse_family(const YAML::Node& node, const std::string& source) {
  if (node.IsScalar()) {
    const auto name = node.as<std::string>();
    if (name != "random-k10") {
      throw ConfigError(where(source, node) + ": family '" + name + "' needs a mapping with its parameters");
    }
    return InstanceFamily::random_k10();
  }
  if (!node.IsMap()) throw ConfigError(where(source, node) + ": a family must be a mapping with a 'kind' key");
  if (!node["kind"]) throw ConfigError(where(source, node) + ": family is missing 'kind'");

  InstanceFamily::Kind kind;
  try {
    kind = parse_family_kind(scalar<std::string>(node["kind"], "kind", source));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where(source, node["kind"]) + ": " + e.what());
  }
  auto k = [&] { return node["k"] ? scalar<std::size_t>(node["k"], "k", source) : std::size_t{10}; };
  auto real = [&](const char* key, double fallback) {
    return node[key] ? scalar<double>(node[key], key, source) : fallback;
  };

  InstanceFamily f;
  const std::string context = "family '" + std::string(kind_name(kind)) + "'";
  switch (kind) {
    case InstanceFamily::Kind::RANDOM_K10:
      check_keys(node, {"kind", "k"}, source, context);
      f = InstanceFamily::random_k10();
      f.k = k();
      break;
    case InstanceFamily::Kind::ONE_SPARSE:
      check_keys(node, {"kind", "k"}, source, context);
      f = InstanceFamily::one_sparse(k());
      break;
    case InstanceFamily::Kind::ALPHA:
      check_keys(node, {"kind", "k", "alpha"}, source, context);
      f = InstanceFamily::alpha_family(k(), real("alpha", 0.3));
      break;
    case InstanceFamily::Kind::EQUAL_MEANS:
      check_keys(node, {"kind", "k", "top", "gap"}, source, context);
      f = InstanceFamily::equal_means(k(), real("top", 0.0), real("gap", 0.5));
      break;
    case InstanceFamily::Kind::CLOSE_COMPETITORS:
      check_keys(node, {"kind", "k"}, source, context);
      f = InstanceFamily::close_competitors(k());
      break;
    case InstanceFamily::Kind::EXPLICIT: {
      check_keys(node, {"kind", "means"}, source, context);
      const auto m = node["means"];
      if (!m || !m.IsSequence()) throw ConfigError(where(source, node) + ": explicit family needs a 'means' list");
      std::vector<double> means;
      for (const auto& v : m) means.push_back(scalar<double>(v, "means", source));
      f = InstanceFamily::explicit_means(std::move(means));
      break;
    }
  }
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where(source, node) + ": " + e.what());
  }
  return f;
}

}  // namespace

ExperimentSpec ExperimentConfig::to_spec() const {
  ExperimentSpec spec;
  spec.families = families;
  try {
    for (const auto& name : rules) spec.rules.push_back(parse_rule(name));
    spec.threshold = parse_threshold_kind(threshold);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  spec.delta = delta;
  spec.episodes = episodes;
  spec.seed = seed;
  spec.jobs = jobs;
  spec.max_steps = max_steps;
  spec.checkpoint_every = checkpoint_every;
  spec.record_wall_time = record_wall_time;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  check_keys(root,
             {"families", "rules", "delta", "threshold", "episodes", "seed", "jobs", "max_steps",
              "checkpoint_every", "record_wall_time", "out_dir"},
             source, "experiment config");

  ExperimentConfig c;
  const auto fams = root["families"];
  if (!fams || !fams.IsSequence() || fams.size() == 0) {
    throw ConfigError(source + ": 'families' must be a non-empty list");
  }
  for (const auto& f : fams) c.families.push_back(parse_family(f, source));

  const auto rules = root["rules"];
  if (!rules || !rules.IsSequence() || rules.size() == 0) {
    throw ConfigError(source + ": 'rules' must be a non-empty list");
  }
  for (const auto& r : rules) {
    const auto name = scalar<std::string>(r, "rules", source);
    try {
      parse_rule(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where(source, r) + ": " + e.what());
    }
    c.rules.push_back(name);
  }

  if (root["delta"]) c.delta = scalar<double>(root["delta"], "delta", source);
  if (root["threshold"]) c.threshold = scalar<std::string>(root["threshold"], "threshold", source);
  if (root["episodes"]) c.episodes = scalar<std::uint64_t>(root["episodes"], "episodes", source);
  if (root["seed"]) c.seed = scalar<std::uint64_t>(root["seed"], "seed", source);
  if (root["jobs"]) c.jobs = scalar<unsigned>(root["jobs"], "jobs", source);
  if (root["max_steps"]) c.max_steps = scalar<std::uint64_t>(root["max_steps"], "max_steps", source);
  if (root["checkpoint_every"]) {
    c.checkpoint_every = scalar<std::uint64_t>(root["checkpoint_every"], "checkpoint_every", source);
  }
  if (root["record_wall_time"]) c.record_wall_time = scalar<bool>(root["record_wall_time"], "record_wall_time", source);
  if (root["out_dir"]) c.out_dir = scalar<std::string>(root["out_dir"], "out_dir", source);

  if (!(c.delta > 0.0 && c.delta < 1.0)) throw ConfigError(where(source, root["delta"]) + ": delta must lie in (0, 1)");
  if (c.threshold != "exact" && c.threshold != "heuristic") {
    throw ConfigError(where(source, root["threshold"]) + ": threshold must be 'exact' or 'heuristic'");
  }
  if (c.episodes == 0) throw ConfigError(where(source, root["episodes"]) + ": episodes must be at least 1");
  if (c.jobs == 0) throw ConfigError(where(source, root["jobs"]) + ": jobs must be at least 1");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "families" << YAML::Value << YAML::BeginSeq;
  for (const auto& f : c.families) {
    out << YAML::Flow << YAML::BeginMap;
    out << YAML::Key << "kind" << YAML::Value << std::string(kind_name(f.kind));
    switch (f.kind) {
      case InstanceFamily::Kind::EXPLICIT:
        out << YAML::Key << "means" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (double m : f.means) out << format_double(m);
        out << YAML::EndSeq;
        break;
      case InstanceFamily::Kind::ALPHA:
        out << YAML::Key << "k" << YAML::Value << f.k;
        out << YAML::Key << "alpha" << YAML::Value << format_double(f.alpha);
        break;
      case InstanceFamily::Kind::EQUAL_MEANS:
        out << YAML::Key << "k" << YAML::Value << f.k;
        out << YAML::Key << "top" << YAML::Value << format_double(f.top);
        out << YAML::Key << "gap" << YAML::Value << format_double(f.gap);
        break;
      default:
        out << YAML::Key << "k" << YAML::Value << f.k;
        break;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "rules" << YAML::Value << YAML::Flow << c.rules;
  out << YAML::Key << "delta" << YAML::Value << format_double(c.delta);
  out << YAML::Key << "threshold" << YAML::Value << c.threshold;
  out << YAML::Key << "episodes" << YAML::Value << c.episodes;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "jobs" << YAML::Value << c.jobs;
  out << YAML::Key << "max_steps" << YAML::Value << c.max_steps;
  out << YAML::Key << "checkpoint_every" << YAML::Value << c.checkpoint_every;
  out << YAML::Key << "record_wall_time" << YAML::Value << c.record_wall_time;
  out << YAML::Key << "out_dir" << YAML::Value << c.out_dir;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace toptwo::cli
