#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "toptwo/experiment.hpp"
#include "toptwo/instance_family.hpp"

namespace toptwo::cli {

/// Invalid or unreadable configuration; the message carries line/key context.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<InstanceFamily> families;
  std::vector<std::string> rules;
  double delta = 0.1;
  std::string threshold = "heuristic";
  std::uint64_t episodes = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t checkpoint_every = 10;
  bool record_wall_time = true;
  std::string out_dir = "results";

  bool operator==(const ExperimentConfig&) const = default;

  /// Resolves rule names and checks every field. Throws ConfigError.
  ExperimentSpec to_spec() const;
};

ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);
/// Canonical YAML: fixed key order, every field written out.
std::string serialize_config(const ExperimentConfig& config);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string& data);

}  // namespace toptwo::cli
