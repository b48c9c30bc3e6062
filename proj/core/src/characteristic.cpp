#include "toptwo/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "toptwo/numerics.hpp"

namespace toptwo {

namespace {

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::domain_error("beta must lie in (0, 1), got " + std::to_string(beta));
  }
}

void check_above_pole(const GapSummary& g, double r) {
  if (!(r * g.min_gap * g.min_gap > 1.0)) {
    throw std::domain_error("radius at or below the pole 1 / min_gap^2");
  }
}

template <typename F>
double sum_over_suboptimal(const GapSummary& g, F&& term) {
  double sum = 0.0;
  for (std::size_t i = 0; i < g.gaps.size(); ++i) {
    if (i != g.best_arm) sum += term(g.gaps[i]);
  }
  return sum;
}

double psi_of(const GapSummary& g, double r) {
  return sum_over_suboptimal(g, [r](double gap) {
           const double v = r * gap * gap - 1.0;
           return 1.0 / (v * v);
         }) -
         1.0;
}

double phi_of(const GapSummary& g, double beta, double r) {
  return sum_over_suboptimal(g, [r](double gap) { return 1.0 / (r * gap * gap - 1.0); }) -
         (1.0 - beta) / beta;
}

// Root of a decreasing function that blows up at the pole 1/min_gap^2 and
// becomes negative for large r.
template <typename F>
double root_above_pole(const GapSummary& g, F&& f) {
  const double pole = 1.0 / (g.min_gap * g.min_gap);
  const double lo = pole * (1.0 + 1e-12);
  double hi = 2.0 * pole;
  int doublings = 0;
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (++doublings > 200) throw std::runtime_error("failed to bracket characteristic root");
  }
  return solve_increasing_crossing(f, lo, hi, 1e-16 * hi);
}

}  // namespace

double psi(const Instance& inst, double r) {
  const auto g = gaps_and_hardness(inst);
  check_above_pole(g, r);
  return psi_of(g, r);
}

double phi(const Instance& inst, double beta, double r) {
  check_beta(beta);
  const auto g = gaps_and_hardness(inst);
  check_above_pole(g, r);
  return phi_of(g, beta, r);
}

CharacteristicResult solve_unconstrained(const Instance& inst) {
  const auto g = gaps_and_hardness(inst);
  const double r = root_above_pole(g, [&g](double x) { return psi_of(g, x); });
  const double s = sum_over_suboptimal(g, [r](double gap) { return 1.0 / (r * gap * gap - 1.0); });

  CharacteristicResult out;
  out.radius = r;
  out.time = 2.0 * r * (1.0 + s);
  out.allocation.resize(inst.num_arms());
  const double w_best = 1.0 / (1.0 + s);
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    out.allocation[i] = i == g.best_arm ? w_best : w_best / (r * g.gaps[i] * g.gaps[i] - 1.0);
  }
  return out;
}

CharacteristicResult solve_constrained(const Instance& inst, double beta) {
  check_beta(beta);
  const auto g = gaps_and_hardness(inst);
  const double r = root_above_pole(g, [&g, beta](double x) { return phi_of(g, beta, x); });

  CharacteristicResult out;
  out.radius = r;
  out.time = 2.0 * r / beta;
  out.allocation.resize(inst.num_arms());
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    out.allocation[i] = i == g.best_arm ? beta : beta / (r * g.gaps[i] * g.gaps[i] - 1.0);
  }
  return out;
}

std::vector<double> transportation_costs(const Instance& inst, const std::vector<double>& allocation) {
  const auto g = gaps_and_hardness(inst);
  if (allocation.size() != inst.num_arms()) {
    throw std::invalid_argument("allocation size does not match the number of arms");
  }
  std::vector<double> costs(inst.num_arms(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < inst.num_arms(); ++i) {
    if (i == g.best_arm) continue;
    costs[i] = g.gaps[i] * g.gaps[i] / (2.0 * (1.0 / allocation[g.best_arm] + 1.0 / allocation[i]));
  }
  return costs;
}

CharacteristicResult grid_oracle(const Instance& inst, std::optional<double> beta, int resolution) {
  const std::size_t k = inst.num_arms();
  if (k > 5) throw std::invalid_argument("grid oracle is limited to K <= 5");
  if (resolution < 2) throw std::invalid_argument("grid oracle needs resolution >= 2");
  if (beta) check_beta(*beta);
  const auto g = gaps_and_hardness(inst);

  // Free coordinates: every arm when unconstrained, the non-best arms otherwise.
  std::vector<std::size_t> free_arms;
  for (std::size_t i = 0; i < k; ++i) {
    if (!beta || i != g.best_arm) free_arms.push_back(i);
  }
  const double mass = beta ? 1.0 - *beta : 1.0;
  const double unit = mass / resolution;

  std::vector<int> units(free_arms.size(), 0);
  std::vector<double> w(k, 0.0);
  if (beta) w[g.best_arm] = *beta;
  double best_value = -1.0;
  std::vector<double> best_w;

  auto evaluate = [&]() {
    for (std::size_t j = 0; j < free_arms.size(); ++j) w[free_arms[j]] = unit * units[j];
    const double inv_best = 1.0 / w[g.best_arm];
    double value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k && value > best_value; ++i) {
      if (i == g.best_arm) continue;
      value = std::min(value, g.gaps[i] * g.gaps[i] / (inv_best + 1.0 / w[i]));
    }
    if (value > best_value) {
      best_value = value;
      best_w = w;
    }
  };

  // Enumerate compositions of `resolution` into strictly positive parts; a zero
  // coordinate always yields a zero cost so it can never be optimal.
  std::function<void(std::size_t, int)> recurse = [&](std::size_t j, int remaining) {
    if (j + 1 == free_arms.size()) {
      units[j] = remaining;
      evaluate();
      return;
    }
    const int slots_after = static_cast<int>(free_arms.size() - j - 1);
    for (int u = 1; u <= remaining - slots_after; ++u) {
      units[j] = u;
      recurse(j + 1, remaining - u);
    }
  };
  recurse(0, resolution);

  CharacteristicResult out;
  out.time = 2.0 / best_value;
  out.allocation = best_w;
  out.radius = std::numeric_limits<double>::quiet_NaN();
  return out;
}

double beta_ratio(const Instance& inst) {
  return solve_constrained(inst, 0.5).time / solve_unconstrained(inst).time;
}

double r_k(std::size_t num_arms) {
  if (num_arms < 2) throw std::invalid_argument("r_k needs K >= 2");
  const double k = static_cast<double>(num_arms);
  const double root = 1.0 + std::sqrt(k - 1.0);
  return 2.0 * k / (root * root);
}

double h1(double x, double beta, std::size_t num_arms) {
  if (!(x > 0.0)) throw std::domain_error("h1: x must be > 0");
  check_beta(beta);
  const double arg = std::log(x) + (2.0 + static_cast<double>(num_arms) / beta) / x;
  return x * lambert_w_bar(std::max(1.0, arg));
}

double h3(double x) {
  if (!(x > 0.0)) throw std::domain_error("h3: x must be > 0");
  if (x < std::numbers::e) return x;
  return x * lambert_w_bar(std::max(1.0, std::log(x)));
}

double lower_bound_line(const Instance& inst, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
  return solve_unconstrained(inst).time * std::log(1.0 / (2.4 * delta));
}

void BoundParams::validate(std::size_t num_arms) const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
  check_beta(beta);
  if (!(alpha > 1.0) || !(s > 1.0)) throw std::domain_error("alpha and s must be > 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::domain_error("eps must lie in (0, 1]");
  const double w0_max = 1.0 / static_cast<double>(num_arms - 1);
  if (!(w0 >= 0.0 && w0 <= w0_max)) throw std::domain_error("w0 must lie in [0, 1/(K-1)]");
}

std::uint64_t implicit_stopping_time(double slope, std::size_t num_arms, double delta, double alpha, double s) {
  const Threshold c({ThresholdSpec::Kind::EXACT, num_arms}, delta);
  const double log_coeff = alpha * (2.0 + s);
  auto holds = [&](std::uint64_t n) {
    const double nd = static_cast<double>(n);
    const double root = std::sqrt(c(nd - 1.0)) + std::sqrt(log_coeff * std::log(nd));
    return nd - 1.0 <= slope * root * root;
  };

  constexpr std::uint64_t kWindow = 64;
  const std::uint64_t first = num_arms + 1;
  std::uint64_t probe = first;
  for (;;) {
    bool any = false;
    for (std::uint64_t n = probe; n < probe + kWindow; ++n) {
      if (holds(n)) {
        any = true;
        break;
      }
    }
    if (!any) break;
    if (probe > (std::uint64_t{1} << 52)) throw std::runtime_error("implicit time search diverged");
    probe *= 2;
  }
  for (std::uint64_t n = probe + kWindow - 1; n >= first; --n) {
    if (holds(n)) return n;
  }
  return num_arms;
}

std::uint64_t mixture_bonus_constant(double hardness, std::size_t num_arms, double beta, double alpha,
                                     double s) {
  check_beta(beta);
  const BonusSpec gm = BonusSpec::mixture(alpha, s);
  const double offset = static_cast<double>(num_arms) / beta + 2.0;
  auto below = [&](std::uint64_t x) {
    const double xd = static_cast<double>(x);
    return xd < 2.0 * hardness * bonus(gm, std::pow(xd, alpha)) / beta + offset;
  };
  // x - f(x) is convex with f concave, so {x : x < f(x)} is an initial segment of N*.
  if (!below(1)) return 0;
  std::uint64_t lo = 1;
  std::uint64_t hi = 2;
  while (below(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > (std::uint64_t{1} << 60)) throw std::runtime_error("mixture constant search diverged");
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (below(mid) ? lo : hi) = mid;
  }
  return lo;
}

BoundReport theorem2_bound(const Instance& inst, const BoundParams& params) {
  const std::size_t k = inst.num_arms();
  params.validate(k);
  const auto g = gaps_and_hardness(inst);
  const auto constrained = solve_constrained(inst, params.beta);

  BoundReport r;
  r.params = params;
  r.t_beta = constrained.time;
  r.w_beta = constrained.allocation;
  r.hardness = g.hardness;

  const double clip = (1.0 - params.beta) * params.w0;
  double w_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == g.best_arm) continue;
    w_min = std::min(w_min, r.w_beta[i]);
    if (r.w_beta[i] < clip) ++r.d_mu;
  }
  const double shrink = std::pow(1.0 - params.w0, static_cast<double>(r.d_mu));
  r.a_mu = shrink * std::max(w_min, clip);

  r.c0 = 2.0 / (params.eps * r.a_mu) + 1.0;
  r.c1 = 1.0 / (params.beta * params.eps);
  r.c2 = (2.0 * static_cast<double>(k) - 1.0) * riemann_zeta(params.s) + 1.0;
  r.c_mu = h1(4.0 * params.alpha * params.alpha * (1.0 + params.s) * g.hardness / params.beta, params.beta, k);

  const double slope = r.t_beta * (1.0 + params.eps) * (1.0 + params.eps) / (params.beta * shrink);
  r.t0_delta = implicit_stopping_time(slope, k, params.delta, params.alpha, params.s);

  const double a = params.alpha;
  const double rest = std::max({std::pow(r.c0, a / (a - 1.0)), std::pow(r.c1, a)});
  r.total = std::max({static_cast<double>(r.t0_delta), std::pow(r.c_mu, a), rest}) + r.c2;

  r.c_mu_tilde = mixture_bonus_constant(g.hardness, k, params.beta, params.alpha, params.s);
  r.total_mixture =
      std::max({static_cast<double>(r.t0_delta), std::pow(static_cast<double>(r.c_mu_tilde), a), rest}) + r.c2;
  return r;
}

UniformBoundReport uniform_bound(const Instance& inst, double delta, double alpha, double s) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must lie in (0, 1)");
  if (!(alpha > 1.0) || !(s > 1.0)) throw std::domain_error("alpha and s must be > 1");
  const auto g = gaps_and_hardness(inst);
  const double k = static_cast<double>(inst.num_arms());
  const double gap2 = g.min_gap * g.min_gap;

  UniformBoundReport r;
  r.delta = delta;
  r.alpha = alpha;
  r.s = s;
  r.slope = 4.0 * k / gap2;
  r.t1_delta = implicit_stopping_time(r.slope, inst.num_arms(), delta, alpha, s);
  r.h3_term = h3(8.0 * alpha * k * (1.0 + s) / gap2);
  r.total = std::max(static_cast<double>(r.t1_delta), r.h3_term) + 1.0 + (2.0 * k - 1.0) * riemann_zeta(s);
  return r;
}

}  // namespace toptwo
