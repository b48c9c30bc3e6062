#include "toptwo/numerics.hpp"

#include <array>
#include <limits>
#include <string>

namespace toptwo {

void BonusSpec::validate() const {
  if (kind == Kind::G0) return;
  if (!(alpha > 1.0) || !(s > 1.0)) {
    throw std::invalid_argument("bonus parameters require alpha > 1 and s > 1");
  }
}

void ThresholdSpec::validate() const {
  if (num_arms < 2) {
    throw std::invalid_argument("threshold requires at least two arms");
  }
}

double lambert_w_bar(double x) {
  if (!(x >= 1.0) || std::isnan(x)) {
    throw std::domain_error("lambert_w_bar: argument must be >= 1, got " + std::to_string(x));
  }
  if (std::isinf(x)) return x;
  // Solve u - log1p(u) = t with y = 1 + u; the log1p form keeps precision near x = 1.
  const double t = x - 1.0;
  if (t == 0.0) return 1.0;
  auto h = [t](double u) { return u - std::log1p(u) - t; };
  double u = t < 1.0 ? std::sqrt(2.0 * t) + t : x + std::log(x);
  if (h(u) < 0.0) u = x + std::log(x) + 1.0;
  // h is convex and increasing on u > 0, so Newton from the right decreases monotonically.
  for (int i = 0; i < 100; ++i) {
    const double step = h(u) * (1.0 + u) / u;
    const double next = u - step;
    if (!(next > 0.0)) {
      u *= 0.5;
      continue;
    }
    if (std::abs(next - u) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + u)) {
      u = next;
      break;
    }
    u = next;
  }
  return 1.0 + u;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) {
    throw std::domain_error("riemann_zeta: argument must be > 1, got " + std::to_string(s));
  }
  // B_{2k} / (2k)!
  static constexpr std::array<double, 8> kBernoulliOverFactorial = {
      1.0 / 6.0 / 2.0,
      -1.0 / 30.0 / 24.0,
      1.0 / 42.0 / 720.0,
      -1.0 / 30.0 / 40320.0,
      5.0 / 66.0 / 3628800.0,
      -691.0 / 2730.0 / 479001600.0,
      7.0 / 6.0 / 87178291200.0,
      -3617.0 / 510.0 / 20922789888000.0,
  };
  constexpr int kDirectTerms = 16;
  const double n_cut = kDirectTerms;

  double sum = 0.0;
  for (int k = kDirectTerms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  sum += std::pow(n_cut, 1.0 - s) / (s - 1.0);
  sum += 0.5 * std::pow(n_cut, -s);

  // Tail corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  double rising = s;
  double power = std::pow(n_cut, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    sum += kBernoulliOverFactorial[k] * rising * power;
    const double a = s + 2.0 * static_cast<double>(k) + 1.0;
    rising *= a * (a + 1.0);
    power /= n_cut * n_cut;
  }
  return sum;
}

double gaussian_calibration_exponent(double lambda) {
  if (!(lambda > 0.5 && lambda < 1.0)) {
    throw std::domain_error("calibration exponent defined on (1/2, 1)");
  }
  return 2.0 * lambda - 2.0 * lambda * std::log(4.0 * lambda) + std::log(riemann_zeta(2.0 * lambda)) -
         0.5 * std::log1p(-lambda);
}

double c_gaussian(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("c_gaussian: argument must be > 0, got " + std::to_string(x));
  }
  auto objective = [x](double lambda) { return (gaussian_calibration_exponent(lambda) + x) / lambda; };
  const double lambda = golden_section_minimize(objective, 0.5 + 1e-6, 1.0 - 1e-6, 1e-10);
  return objective(lambda);
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::domain_error("delta must lie in (0, 1), got " + std::to_string(delta));
  }
}

double exact_offset(std::size_t num_arms, double delta) {
  return 2.0 * c_gaussian(0.5 * std::log(static_cast<double>(num_arms - 1) / delta));
}

double log_log_term(double n) { return 4.0 * std::log(4.0 + std::log(std::max(n, 2.0) / 2.0)); }

}  // namespace

double threshold(const ThresholdSpec& spec, double n, double delta) {
  return Threshold(spec, delta)(n);
}

Threshold::Threshold(ThresholdSpec spec, double delta) : spec_(spec), delta_(delta) {
  check_delta(delta);
  if (spec_.kind == ThresholdSpec::Kind::EXACT) {
    spec_.validate();
    exact_offset_ = exact_offset(spec_.num_arms, delta_);
  }
}

double Threshold::operator()(double n) const {
  if (!(n >= 1.0)) {
    throw std::domain_error("threshold: n must be >= 1");
  }
  if (spec_.kind == ThresholdSpec::Kind::HEURISTIC) {
    return std::log((1.0 + std::log(n)) / delta_);
  }
  return exact_offset_ + log_log_term(n);
}

double bonus(const BonusSpec& spec, double n) {
  if (!(n >= 1.0)) {
    throw std::domain_error("bonus: n must be >= 1");
  }
  const double log_n = std::log(n);
  switch (spec.kind) {
    case BonusSpec::Kind::G0:
      return 0.0;
    case BonusSpec::Kind::GU:
      return 2.0 * spec.alpha * (1.0 + spec.s) * log_n;
    case BonusSpec::Kind::GM:
      return lambert_w_bar(2.0 * spec.s * spec.alpha * log_n + 2.0 * std::log(2.0 + spec.alpha * log_n) + 2.0);
  }
  return 0.0;
}

}  // namespace toptwo
