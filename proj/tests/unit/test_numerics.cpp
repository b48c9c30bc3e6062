#include <doctest.h>

#include <boost/math/special_functions/lambert_w.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "generators.hpp"
#include "toptwo/characteristic.hpp"
#include "toptwo/numerics.hpp"

using namespace toptwo;

namespace {

// Plain bisection, no shared code with the library.
template <typename F>
double bisect(F f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) > 0) == (f(hi) > 0)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// 10^6 direct terms plus an Euler-Maclaurin tail.
double zeta_reference(double s) {
  const double n_terms = 1e6;
  double sum = 0.0;
  for (double n = n_terms - 1; n >= 1; n -= 1) sum += std::pow(n, -s);
  const double N = n_terms;
  return sum + std::pow(N, 1 - s) / (s - 1) + 0.5 * std::pow(N, -s) + s * std::pow(N, -s - 1) / 12.0;
}

double g_reference(double l) {
  return 2 * l - 2 * l * std::log(4 * l) + std::log(boost::math::zeta(2 * l)) - 0.5 * std::log(1 - l);
}

// Minimum of (g + x) / lambda over a uniform lambda grid.
double c_gaussian_grid(double x, int points = 100000) {
  const double lo = 0.5 + 1e-6;
  const double hi = 1.0 - 1e-6;
  double best = INFINITY;
  for (int i = 0; i <= points; ++i) {
    const double l = lo + (hi - lo) * i / points;
    best = std::min(best, (g_reference(l) + x) / l);
  }
  return best;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("lambert_w_bar examples") {
    CHECK(lambert_w_bar(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double oracle = bisect([](double y) { return y - std::log(y) - 2.0; }, 2.0, 6.0);
    CHECK(lambert_w_bar(2.0) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(lambert_w_bar(2.0) == doctest::Approx(3.1462).epsilon(1e-4));
    for (double x : {1.5, 3.0, 10.0, 100.0}) {
      const double y = lambert_w_bar(x);
      CHECK(y >= x + std::log(x) - 1e-12);
      CHECK(y <= x + std::log(x) + std::min(0.5, 1.0 / std::sqrt(x)) + 1e-12);
    }
  }

  TEST_CASE("lambert_w_bar rejects x below 1") {
    CHECK_THROWS_AS(lambert_w_bar(0.999), std::domain_error);
    CHECK_THROWS_AS(lambert_w_bar(-3.0), std::domain_error);
    CHECK_THROWS_AS(lambert_w_bar(NAN), std::domain_error);
  }

  TEST_CASE("lambert_w_bar property grid") {
    testgen::Gen gen(11);
    for (int i = 0; i < 1000; ++i) {
      const double x = gen.log_uniform(1.0, 1e6);
      const double y = lambert_w_bar(x);
      CHECK(y - std::log(y) == doctest::Approx(x).epsilon(1e-9).scale(1.0));
      CHECK(std::abs(y - std::log(y) - x) <= 1e-9 * std::max(1.0, x));
      CHECK(y >= x + std::log(x) - 1e-9);
      if (x > 1.0) CHECK(y <= x + std::log(x) + std::min(0.5, 1.0 / std::sqrt(x)) + 1e-9);
      if (x < 700) {
        const double w = -boost::math::lambert_wm1(-std::exp(-x));
        CHECK(y == doctest::Approx(w).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("lambert_w_bar near 1") {
    for (double x : {1.0 + 1e-14, 1.0 + 1e-10, 1.0 + 1e-6, 1.01}) {
      const double y = lambert_w_bar(x);
      CHECK(y >= 1.0);
      CHECK(std::abs(y - std::log(y) - x) < 1e-12);
    }
  }

  TEST_CASE("riemann_zeta closed forms") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(riemann_zeta(2.0) - pi * pi / 6.0) < 1e-10);
    CHECK(std::abs(riemann_zeta(4.0) - std::pow(pi, 4) / 90.0) < 1e-10);
  }

  TEST_CASE("riemann_zeta against references") {
    CHECK(riemann_zeta(1.2) == doctest::Approx(zeta_reference(1.2)).epsilon(1e-10));
    CHECK(riemann_zeta(1.2) == doctest::Approx(5.59158).epsilon(1e-6));
    for (double s = 1.01; s <= 4.0; s += 0.0371) {
      CHECK(riemann_zeta(s) == doctest::Approx(boost::math::zeta(s)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(riemann_zeta(0.5), std::domain_error);
  }

  TEST_CASE("c_gaussian examples") {
    const double c5 = c_gaussian(5.0);
    CHECK(c5 >= 5.0);
    CHECK(c5 <= 5.0 + std::log(5.0) + 3.0);

    const double x = 0.5 * std::log(9.0 / 0.1);
    const double grid = c_gaussian_grid(x);
    CHECK(c_gaussian(x) <= grid + 1e-12);
    CHECK(c_gaussian(x) == doctest::Approx(grid).epsilon(1e-8));
    CHECK(std::isfinite(c_gaussian(x)));
    CHECK(c_gaussian(x) > 0.0);

    // reference values evaluated with arbitrary precision
    CHECK(c_gaussian(1.0) == doctest::Approx(2.507).epsilon(5e-4));
    CHECK(c_gaussian(5.0) == doctest::Approx(6.757).epsilon(5e-4));
    CHECK(c_gaussian(10.0) == doctest::Approx(11.955).epsilon(5e-4));
  }

  TEST_CASE("c_gaussian is monotone and close to x + ln x") {
    double prev = -INFINITY;
    for (double x : {1.0, 2.0, 5.0, 10.0, 50.0}) {
      const double c = c_gaussian(x);
      CHECK(c > prev);
      prev = c;
    }
    testgen::Gen gen(5);
    for (int i = 0; i < 200; ++i) {
      const double x = gen.log_uniform(1.0, 1e4);
      const double c = c_gaussian(x);
      CHECK(c >= x);
      CHECK(c - (x + std::log(x)) <= 3.0);
    }
    CHECK_THROWS_AS(c_gaussian(0.0), std::domain_error);
    CHECK_THROWS_AS(c_gaussian(-1.0), std::domain_error);
  }

  TEST_CASE("c_gaussian matches the grid scan") {
    for (double x : {0.1, 0.7, 1.0, 3.3, 20.0}) {
      CHECK(c_gaussian(x) == doctest::Approx(c_gaussian_grid(x, 20000)).epsilon(1e-6));
    }
  }

  TEST_CASE("gaussian_calibration_exponent matches its definition") {
    for (double l : {0.51, 0.6, 0.75, 0.9, 0.99}) {
      CHECK(gaussian_calibration_exponent(l) == doctest::Approx(g_reference(l)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(gaussian_calibration_exponent(0.5), std::domain_error);
    CHECK_THROWS_AS(gaussian_calibration_exponent(1.0), std::domain_error);
  }

  TEST_CASE("heuristic threshold") {
    const ThresholdSpec h{ThresholdSpec::Kind::HEURISTIC, 10};
    CHECK(threshold(h, 100, 0.1) == doctest::Approx(std::log(10.0 * (1.0 + std::log(100.0)))).epsilon(1e-14));
    CHECK(threshold(h, 100, 0.1) == doctest::Approx(4.0263).epsilon(1e-4));
    CHECK(threshold(h, 1, 0.1) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  }

  TEST_CASE("exact threshold") {
    const ThresholdSpec e{ThresholdSpec::Kind::EXACT, 10};
    const double x = 0.5 * std::log(9.0 / 0.1);
    const double expected = 2.0 * c_gaussian_grid(x) + 4.0 * std::log(4.0 + std::log(50.0));
    CHECK(threshold(e, 100, 0.1) == doctest::Approx(expected).epsilon(1e-8));
    // ln(n/2) is clamped at n = 2
    CHECK(threshold(e, 1, 0.1) == threshold(e, 2, 0.1));
    CHECK(threshold(e, 1.5, 0.1) == threshold(e, 2, 0.1));
    CHECK_THROWS_AS(threshold(e, 0.5, 0.1), std::domain_error);
    CHECK_THROWS_AS(threshold(e, 10, 0.0), std::domain_error);
    CHECK_THROWS_AS(threshold(e, 10, 1.0), std::domain_error);
    CHECK_THROWS_AS(threshold(ThresholdSpec{ThresholdSpec::Kind::EXACT, 1}, 10, 0.1), std::invalid_argument);
  }

  TEST_CASE("thresholds are monotone on a grid") {
    for (auto kind : {ThresholdSpec::Kind::EXACT, ThresholdSpec::Kind::HEURISTIC}) {
      const ThresholdSpec spec{kind, 5};
      for (int di = 0; di < 20; ++di) {
        const double delta = std::pow(10.0, -0.5 - 0.5 * di);  // 0.316 .. 1e-10
        double prev = -INFINITY;
        for (int ni = 0; ni < 20; ++ni) {
          const double n = std::pow(10.0, 0.35 * ni);
          const double c = threshold(spec, n, delta);
          CHECK(c >= prev);
          prev = c;
          if (di > 0) {
            const double looser = std::pow(10.0, -0.5 - 0.5 * (di - 1));
            CHECK(threshold(spec, n, looser) <= c);
          }
        }
      }
    }
  }

  TEST_CASE("Threshold object agrees with the free function") {
    for (auto kind : {ThresholdSpec::Kind::EXACT, ThresholdSpec::Kind::HEURISTIC}) {
      const ThresholdSpec spec{kind, 7};
      const Threshold t(spec, 0.05);
      for (double n : {1.0, 2.0, 3.0, 17.0, 1e3, 1e7}) {
        CHECK(t(n) == doctest::Approx(threshold(spec, n, 0.05)).epsilon(1e-15));
      }
    }
  }

  TEST_CASE("bonus examples") {
    const auto gu = BonusSpec::union_bound();
    const auto gm = BonusSpec::mixture();
    CHECK(bonus(gu, 100) == doctest::Approx(5.28 * std::log(100.0)).epsilon(1e-14));
    CHECK(bonus(gu, 100) == doctest::Approx(24.315).epsilon(1e-4));
    CHECK(bonus(BonusSpec::zero(), 100) == 0.0);
    CHECK(bonus(BonusSpec::zero(), 12345) == 0.0);
    const double inner = 2.0 * 1.2 * 1.2 * std::log(100.0) + 2.0 * std::log(2.0 + 1.2 * std::log(100.0)) + 2.0;
    CHECK(inner == doctest::Approx(19.300).epsilon(1e-4));
    const double g = bonus(gm, 100);
    CHECK(g >= 22.26);
    CHECK(g <= 22.76);
    CHECK(g - std::log(g) == doctest::Approx(inner).epsilon(1e-12));
  }

  TEST_CASE("mixture bonus is below the union bonus from n = 37 on") {
    const auto gu = BonusSpec::union_bound();
    const auto gm = BonusSpec::mixture();
    for (double n = 100; n <= 1e7; n *= 10) CHECK(bonus(gm, n) <= bonus(gu, n));
    for (int n = 37; n <= 5000; ++n) CHECK(bonus(gm, n) <= bonus(gu, n));
    // the mixture bonus carries a larger constant, so it loses for small n
    CHECK(bonus(gm, 2) > bonus(gu, 2));
    CHECK(bonus(gm, 10) > bonus(gu, 10));
    CHECK(bonus(gm, 36) > bonus(gu, 36));
  }

  TEST_CASE("bonus parameter validation") {
    CHECK_THROWS_AS(BonusSpec::union_bound(1.0, 1.2).validate(), std::invalid_argument);
    CHECK_THROWS_AS(BonusSpec::mixture(1.2, 0.9).validate(), std::invalid_argument);
    CHECK_NOTHROW(BonusSpec{BonusSpec::Kind::G0, 0.0, 0.0}.validate());
  }

  TEST_CASE("solve_increasing_crossing examples") {
    CHECK(solve_increasing_crossing([](double x) { return x - 2.0; }, 0.0, 10.0, 1e-12) ==
          doctest::Approx(2.0).epsilon(1e-11));
    const double w = solve_increasing_crossing([](double y) { return y - std::log(y) - 2.0; }, 2.0, 6.0, 1e-13);
    CHECK(w == doctest::Approx(3.1462).epsilon(1e-4));
    CHECK(w == doctest::Approx(lambert_w_bar(2.0)).epsilon(1e-12));

    const Instance eq({0.0, -0.5, -0.5, -0.5, -0.5});
    const double r = solve_increasing_crossing([&](double x) { return psi(eq, x); }, 4.0 * (1 + 1e-12), 1e6, 1e-12);
    CHECK(r == doctest::Approx(12.0).epsilon(1e-9));
  }

  TEST_CASE("solve_increasing_crossing edge cases") {
    CHECK_THROWS_AS(solve_increasing_crossing([](double x) { return x + 1.0; }, 0.0, 1.0, 1e-9),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_increasing_crossing([](double x) { return x; }, 1.0, 0.0, 1e-9), std::invalid_argument);
    CHECK(solve_increasing_crossing([](double x) { return 3.0 - x; }, 0.0, 10.0, 1e-12) ==
          doctest::Approx(3.0).epsilon(1e-11));
    CHECK(solve_increasing_crossing([](double x) { return x; }, 0.0, 1.0, 1e-9) == 0.0);
    int calls = 0;
    solve_increasing_crossing(
        [&](double x) {
          ++calls;
          return x - 0.3;
        },
        0.0, 1.0, 1e-6);
    CHECK(calls <= 2 + 21);
  }

  TEST_CASE("golden_section_minimize") {
    const double x = golden_section_minimize([](double t) { return (t - 1.3) * (t - 1.3); }, 0.0, 3.0, 1e-10);
    CHECK(x == doctest::Approx(1.3).epsilon(1e-8));
  }
}
