#include "toptwo/instance_family.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace toptwo {

namespace {

constexpr std::array<std::pair<InstanceFamily::Kind, std::string_view>, 6> kNames = {{
    {InstanceFamily::Kind::RANDOM_K10, "random-k10"},
    {InstanceFamily::Kind::ONE_SPARSE, "one-sparse"},
    {InstanceFamily::Kind::ALPHA, "alpha"},
    {InstanceFamily::Kind::EQUAL_MEANS, "equal-means"},
    {InstanceFamily::Kind::CLOSE_COMPETITORS, "close-competitors"},
    {InstanceFamily::Kind::EXPLICIT, "explicit"},
}};

std::string short_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  (void)ec;
  return std::string(buf.data(), end);
}

}  // namespace

InstanceFamily InstanceFamily::one_sparse(std::size_t k) {
  InstanceFamily f;
  f.kind = Kind::ONE_SPARSE;
  f.k = k;
  return f;
}

InstanceFamily InstanceFamily::alpha_family(std::size_t k, double alpha) {
  InstanceFamily f;
  f.kind = Kind::ALPHA;
  f.k = k;
  f.alpha = alpha;
  return f;
}

InstanceFamily InstanceFamily::equal_means(std::size_t k, double top, double gap) {
  InstanceFamily f;
  f.kind = Kind::EQUAL_MEANS;
  f.k = k;
  f.top = top;
  f.gap = gap;
  return f;
}

InstanceFamily InstanceFamily::close_competitors(std::size_t k) {
  InstanceFamily f;
  f.kind = Kind::CLOSE_COMPETITORS;
  f.k = k;
  return f;
}

InstanceFamily InstanceFamily::explicit_means(std::vector<double> means) {
  InstanceFamily f;
  f.kind = Kind::EXPLICIT;
  f.k = means.size();
  f.means = std::move(means);
  return f;
}

void InstanceFamily::validate() const {
  switch (kind) {
    case Kind::RANDOM_K10:
      if (k != 10) throw std::invalid_argument("random-k10 has exactly 10 arms");
      break;
    case Kind::ONE_SPARSE:
    case Kind::CLOSE_COMPETITORS:
      if (k < 2) throw std::invalid_argument("family needs k >= 2");
      break;
    case Kind::ALPHA:
      if (k < 2) throw std::invalid_argument("family needs k >= 2");
      if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
      break;
    case Kind::EQUAL_MEANS:
      if (k < 2) throw std::invalid_argument("family needs k >= 2");
      if (!(gap > 0.0) || !std::isfinite(gap) || !std::isfinite(top)) {
        throw std::invalid_argument("equal-means needs a finite top and a positive gap");
      }
      break;
    case Kind::EXPLICIT:
      if (means.size() != k) throw std::invalid_argument("explicit family: k must equal the number of means");
      if (!Instance(means).unique_best()) throw DegenerateInstance("degenerate instance: the best arm is not unique");
      break;
  }
}

std::string InstanceFamily::label() const {
  switch (kind) {
    case Kind::RANDOM_K10:
      return "random-k10";
    case Kind::ONE_SPARSE:
      return "one-sparse-k" + std::to_string(k);
    case Kind::ALPHA:
      return "alpha" + short_double(alpha) + "-k" + std::to_string(k);
    case Kind::EQUAL_MEANS:
      return "equal-means-k" + std::to_string(k) + "-top" + short_double(top) + "-gap" + short_double(gap);
    case Kind::CLOSE_COMPETITORS:
      return "close-competitors-k" + std::to_string(k);
    case Kind::EXPLICIT:
      return "explicit-k" + std::to_string(k);
  }
  return "unknown";
}

std::string_view kind_name(InstanceFamily::Kind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

InstanceFamily::Kind parse_family_kind(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  throw std::invalid_argument("unknown instance family '" + std::string(name) + "'");
}

Instance generate(const InstanceFamily& family, RandomStream& rng) {
  family.validate();
  const std::size_t k = family.k;
  std::vector<double> mu(k, 0.0);
  switch (family.kind) {
    case InstanceFamily::Kind::RANDOM_K10:
      do {
        mu[0] = 0.6;
        for (std::size_t i = 1; i < k; ++i) mu[i] = 0.2 + 0.3 * rng.uniform();
      } while (!Instance(mu).unique_best());
      break;
    case InstanceFamily::Kind::ONE_SPARSE:
      mu[0] = 0.25;
      break;
    case InstanceFamily::Kind::ALPHA:
      for (std::size_t i = 0; i < k; ++i) {
        mu[i] = 1.0 - std::pow(static_cast<double>(i) / static_cast<double>(k - 1), family.alpha);
      }
      break;
    case InstanceFamily::Kind::EQUAL_MEANS:
      mu.assign(k, family.top - family.gap);
      mu[0] = family.top;
      break;
    case InstanceFamily::Kind::CLOSE_COMPETITORS: {
      // arms 2..floor(K/2)+1 sit at the 1/20 scale, the rest at 1/10
      const std::size_t close = k / 2;
      mu[0] = 0.6;
      for (std::size_t i = 1; i < k; ++i) {
        const double scale = i <= close ? 1.0 / 20.0 : 1.0 / 10.0;
        mu[i] = 0.6 - scale * (0.995 + rng.uniform() / 100.0);
      }
      break;
    }
    case InstanceFamily::Kind::EXPLICIT:
      mu = family.means;
      break;
  }
  return Instance(std::move(mu));
}

}  // namespace toptwo
