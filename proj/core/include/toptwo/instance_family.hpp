#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "toptwo/instance.hpp"
#include "toptwo/rng.hpp"

namespace toptwo {

/// Benchmark instance generators.
struct InstanceFamily {
  enum class Kind { RANDOM_K10, ONE_SPARSE, ALPHA, EQUAL_MEANS, CLOSE_COMPETITORS, EXPLICIT };

  Kind kind = Kind::RANDOM_K10;
  std::size_t k = 10;
  double alpha = 0.3;          // ALPHA exponent
  double top = 0.0;            // EQUAL_MEANS best mean
  double gap = 0.5;            // EQUAL_MEANS gap
  std::vector<double> means;   // EXPLICIT

  static InstanceFamily random_k10() { return {}; }
  static InstanceFamily one_sparse(std::size_t k);
  static InstanceFamily alpha_family(std::size_t k, double alpha);
  static InstanceFamily equal_means(std::size_t k, double top, double gap);
  static InstanceFamily close_competitors(std::size_t k);
  static InstanceFamily explicit_means(std::vector<double> means);

  /// Throws std::invalid_argument on bad parameters.
  void validate() const;
  /// True when generate() consumes randomness.
  bool randomized() const { return kind == Kind::RANDOM_K10 || kind == Kind::CLOSE_COMPETITORS; }
  /// Short label used in CSV output, e.g. "one-sparse-k10".
  std::string label() const;

  bool operator==(const InstanceFamily&) const = default;
};

std::string_view kind_name(InstanceFamily::Kind kind);
/// Inverse of kind_name. Throws std::invalid_argument.
InstanceFamily::Kind parse_family_kind(std::string_view name);

/// Draws one instance. Random families re-sample until the best arm is unique.
Instance generate(const InstanceFamily& family, RandomStream& rng);

}  // namespace toptwo
