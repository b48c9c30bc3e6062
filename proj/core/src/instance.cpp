#include "toptwo/instance.hpp"

#include <cmath>
#include <limits>

namespace toptwo {

Instance::Instance(std::vector<double> means) : means_(std::move(means)) {
  if (means_.size() < 2) {
    throw std::invalid_argument("an instance needs at least two arms");
  }
  for (double m : means_) {
    if (!std::isfinite(m)) throw std::invalid_argument("instance means must be finite");
  }
}

std::optional<std::size_t> Instance::unique_best() const {
  std::size_t best = 0;
  bool tied = false;
  for (std::size_t i = 1; i < means_.size(); ++i) {
    if (means_[i] > means_[best]) {
      best = i;
      tied = false;
    } else if (means_[i] == means_[best]) {
      tied = true;
    }
  }
  if (tied) return std::nullopt;
  return best;
}

GapSummary gaps_and_hardness(const Instance& inst) {
  const auto best = inst.unique_best();
  if (!best) throw DegenerateInstance("degenerate instance: the best arm is not unique");

  GapSummary out;
  out.best_arm = *best;
  out.gaps.resize(inst.num_arms());
  out.min_gap = std::numeric_limits<double>::infinity();
  const double top = inst.mean(*best);
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    const double gap = top - inst.mean(i);
    out.gaps[i] = gap;
    if (i == *best) continue;
    out.hardness += 2.0 / (gap * gap);
    out.min_gap = std::min(out.min_gap, gap);
  }
  return out;
}

}  // namespace toptwo
