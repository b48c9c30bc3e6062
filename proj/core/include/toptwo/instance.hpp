#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toptwo {

/// Raised when an instance has no unique best arm.
class DegenerateInstance : public std::invalid_argument {
 public:
  explicit DegenerateInstance(const std::string& what) : std::invalid_argument(what) {}
};

/// Gaussian bandit with unit variance, identified by its vector of means.
class Instance {
 public:
  explicit Instance(std::vector<double> means);

  std::size_t num_arms() const { return means_.size(); }
  std::span<const double> means() const { return means_; }
  double mean(std::size_t arm) const { return means_.at(arm); }

  /// Index of the unique best arm, or nullopt when the maximum is tied.
  std::optional<std::size_t> unique_best() const;

 private:
  std::vector<double> means_;
};

struct GapSummary {
  std::size_t best_arm = 0;
  std::vector<double> gaps;  // gaps[best_arm] == 0
  double hardness = 0.0;     // sum over i != best of 2 / gap_i^2
  double min_gap = 0.0;
};

/// Throws DegenerateInstance when the best arm is tied.
GapSummary gaps_and_hardness(const Instance& inst);

}  // namespace toptwo
