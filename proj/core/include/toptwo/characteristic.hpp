#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "toptwo/instance.hpp"

namespace toptwo {

/// Characteristic time together with its maximizing allocation.
///
/// `radius` is the root r of the defining scalar equation: psi for the
/// unconstrained problem, phi for the beta-constrained one.
struct CharacteristicResult {
  double time = 0.0;
  std::vector<double> allocation;
  double radius = 0.0;
};

/// psi(r) = sum_{i != best} (r gap_i^2 - 1)^{-2} - 1, for r > 1 / min_gap^2.
/// Convex and decreasing. Throws std::domain_error at or below the pole.
double psi(const Instance& inst, double r);

/// phi(r) = sum_{i != best} (r gap_i^2 - 1)^{-1} - (1 - beta) / beta.
double phi(const Instance& inst, double beta, double r);

/// T*(mu) and w*(mu): all transportation costs equalized, psi(r) = 0.
CharacteristicResult solve_unconstrained(const Instance& inst);

/// T*_beta(mu) and w*_beta(mu) with w_best fixed to beta, phi(r) = 0.
CharacteristicResult solve_constrained(const Instance& inst, double beta);

/// Transportation cost gap_i^2 / (2 (1/w_best + 1/w_i)) of every arm; entry at best is +inf.
std::vector<double> transportation_costs(const Instance& inst, const std::vector<double>& allocation);

/// Brute-force maximization of the min transportation cost over a simplex grid
/// with step 1/resolution (best-arm coordinate fixed to beta when given).
/// Intended as an independent check of the solvers. Requires K <= 5.
CharacteristicResult grid_oracle(const Instance& inst, std::optional<double> beta, int resolution);

/// T*_{1/2}(mu) / T*(mu).
double beta_ratio(const Instance& inst);

/// 2K / (1 + sqrt(K - 1))^2, the ratio attained by equal-means instances.
double r_k(std::size_t num_arms);

/// x * Wbar(log x + (2 + K/beta) / x), with the Wbar argument clamped at 1.
double h1(double x, double beta, std::size_t num_arms);

/// x * Wbar(log x) for x >= e, x otherwise.
double h3(double x);

/// T*(mu) ln(1 / (2.4 delta)).
double lower_bound_line(const Instance& inst, double delta);

struct BoundParams {
  double delta = 0.1;
  double beta = 0.5;
  double alpha = 1.2;
  double s = 1.2;
  double eps = 1.0;
  double w0 = 0.0;

  void validate(std::size_t num_arms) const;
};

/// Every term of the non-asymptotic upper bound on E[tau] for the Top Two
/// UCB rule with the exact threshold.
struct BoundReport {
  BoundParams params;
  double t_beta = 0.0;                 // T*_beta(mu)
  std::vector<double> w_beta;          // w*_beta(mu)
  double hardness = 0.0;               // H(mu)
  std::size_t d_mu = 0;                // arms with w*_beta,i < (1 - beta) w0
  double a_mu = 0.0;
  std::uint64_t t0_delta = 0;          // implicit delta-dependent time
  double c_mu = 0.0;                   // h1(4 alpha^2 (1+s) H / beta)
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double total = 0.0;                  // max{T0, C_mu^a, C0^{a/(a-1)}, C1^a} + C2
  std::uint64_t c_mu_tilde = 0;        // implicit constant for the mixture bonus
  double total_mixture = 0.0;          // same max with C_mu replaced by c_mu_tilde
};

BoundReport theorem2_bound(const Instance& inst, const BoundParams& params);

/// sup{ x in N* : x < 2 H g_m(x^alpha) / beta + K / beta + 2 }.
std::uint64_t mixture_bonus_constant(double hardness, std::size_t num_arms, double beta, double alpha,
                                     double s);

struct UniformBoundReport {
  double delta = 0.1;
  double alpha = 1.2;
  double s = 1.2;
  double slope = 0.0;            // 4K / min_gap^2
  std::uint64_t t1_delta = 0;
  double h3_term = 0.0;          // h3(8 alpha K (1+s) / min_gap^2)
  double total = 0.0;            // max{T1, h3_term} + 1 + (2K-1) zeta(s)
};

UniformBoundReport uniform_bound(const Instance& inst, double delta, double alpha, double s);

/// sup{ n > K : n - 1 <= slope (sqrt(c(n-1, delta)) + sqrt(alpha (2+s) ln n))^2 } under
/// the exact threshold; returns K when the set is empty.
std::uint64_t implicit_stopping_time(double slope, std::size_t num_arms, double delta, double alpha, double s);

}  // namespace toptwo
