#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace toptwo {

/// Exploration bonus used by the UCB leader, as a function of the round index.
struct BonusSpec {
  enum class Kind { GU, GM, G0 };

  Kind kind = Kind::GM;
  double alpha = 1.2;
  double s = 1.2;

  static BonusSpec union_bound(double alpha = 1.2, double s = 1.2) { return {Kind::GU, alpha, s}; }
  static BonusSpec mixture(double alpha = 1.2, double s = 1.2) { return {Kind::GM, alpha, s}; }
  static BonusSpec zero() { return {Kind::G0, 1.2, 1.2}; }

  /// Throws std::invalid_argument unless alpha > 1 and s > 1 (for GU and GM).
  void validate() const;
};

/// Stopping threshold c(n, delta) family.
struct ThresholdSpec {
  enum class Kind { EXACT, HEURISTIC };

  Kind kind = Kind::HEURISTIC;
  std::size_t num_arms = 2;

  void validate() const;
};

/// Inverse of y -> y - ln(y) on [1, inf): the unique y >= 1 with y - ln y = x.
/// Equals -W_{-1}(-exp(-x)). Throws std::domain_error for x < 1.
double lambert_w_bar(double x);

/// Riemann zeta for real s > 1 (Euler-Maclaurin summation).
double riemann_zeta(double s);

/// g_G(lambda) = 2l - 2l ln(4l) + ln zeta(2l) - ln(1-l)/2, lambda in (1/2, 1).
double gaussian_calibration_exponent(double lambda);

/// Calibration function of the Gaussian mixture-martingale deviation bound:
/// the minimum over lambda in (1/2, 1) of (g_G(lambda) + x) / lambda.
double c_gaussian(double x);

/// Stopping threshold c(n, delta). EXACT clamps ln(n/2) at n = 2.
double threshold(const ThresholdSpec& spec, double n, double delta);

/// Threshold bound to a fixed (spec, delta), caching the C_G term of EXACT.
class Threshold {
 public:
  Threshold(ThresholdSpec spec, double delta);

  double operator()(double n) const;
  const ThresholdSpec& spec() const { return spec_; }
  double delta() const { return delta_; }

 private:
  ThresholdSpec spec_;
  double delta_;
  double exact_offset_ = 0.0;
};

/// Bonus g(n). Accepts real n >= 1 so that implicit-time searches can use g(x^alpha).
double bonus(const BonusSpec& spec, double n);

/// Bisection for the sign change of a monotone function on [lo, hi].
/// Terminates after ceil(log2((hi - lo) / tol)) halvings (capped at 200).
/// Throws std::invalid_argument when f(lo) and f(hi) have the same strict sign.
template <typename F>
double solve_increasing_crossing(F&& f, double lo, double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0)) {
    throw std::invalid_argument("solve_increasing_crossing: need lo < hi and tol > 0");
  }
  double f_lo = f(lo);
  double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    throw std::invalid_argument("solve_increasing_crossing: no sign change on bracket");
  }
  const bool increasing = f_lo < 0.0;
  const int steps = std::min(200, static_cast<int>(std::ceil(std::log2((hi - lo) / tol))) + 1);
  for (int i = 0; i < steps; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

/// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace toptwo
