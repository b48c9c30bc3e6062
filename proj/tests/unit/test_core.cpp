#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "generators.hpp"
#include "states.hpp"
#include "toptwo/bandit_state.hpp"

using namespace toptwo;
using testgen::make_state;

namespace {

BanditState initialized(std::size_t k) {
  BanditState s(k);
  for (std::size_t i = 0; i < k; ++i) s.record(i, 0.0);
  return s;
}

// Pairwise statistic written out directly.
double pairwise(double mu_a, double n_a, double mu_b, double n_b) {
  return (mu_a - mu_b) / std::sqrt(1.0 / n_a + 1.0 / n_b);
}

const ThresholdSpec kHeuristic{ThresholdSpec::Kind::HEURISTIC, 2};

}  // namespace

TEST_SUITE("core") {
  TEST_CASE("observe bookkeeping") {
    BanditState s = initialized(2);
    CHECK(s.round() == 3);
    CHECK(s.leader_count(0) == 0);
    CHECK_FALSE(s.last_leader().has_value());
    s.observe(0, 1, 0, 0.5);
    CHECK(s.leader_count(0) == 1);
    CHECK(s.leader_count(1) == 0);
    CHECK(s.pair_count(0, 0) == 1);
    CHECK(s.pair_count(0, 1) == 0);
    CHECK(s.pulls(0) == 2);
    CHECK(s.sum(0) == 0.5);
    CHECK(s.round() == 4);
    CHECK(*s.last_leader() == 0);
    CHECK(*s.last_challenger() == 1);

    CHECK_THROWS_AS(s.observe(0, 1, 2, 0.0), std::out_of_range);
    CHECK_THROWS_AS(s.observe(5, 1, 1, 0.0), std::out_of_range);
    CHECK_THROWS_AS(BanditState(3).observe(0, 1, 2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(BanditState(1), std::invalid_argument);
    CHECK_THROWS_AS(BanditState(2).mean(0), std::logic_error);
  }

  TEST_CASE("counts stay consistent under random observe sequences") {
    testgen::Gen gen(5);
    for (int t = 0; t < 50; ++t) {
      const std::size_t k = gen.integer(2, 8);
      BanditState s = initialized(k);
      CHECK(s.initialized());
      const std::uint64_t steps = gen.integer(1, 300);
      for (std::uint64_t j = 0; j < steps; ++j) {
        const std::size_t leader = gen.integer(0, k - 1);
        std::size_t challenger = gen.integer(0, k - 2);
        if (challenger >= leader) ++challenger;
        s.observe(leader, challenger, gen.uniform(0, 1) < 0.5 ? leader : challenger, gen.uniform(-1, 1));
      }
      const auto pulls = s.pulls();
      CHECK(std::accumulate(pulls.begin(), pulls.end(), std::uint64_t{0}) == k + steps);
      CHECK(s.samples() == k + steps);
      std::uint64_t leads = 0;
      for (std::size_t i = 0; i < k; ++i) {
        std::uint64_t row = 0;
        for (std::size_t j = 0; j < k; ++j) row += s.pair_count(i, j);
        CHECK(row == s.leader_count(i));
        leads += s.leader_count(i);
        CHECK(pulls[i] >= 1);
      }
      CHECK(leads == steps);
    }
  }

  TEST_CASE("means agree with exact rational bookkeeping") {
    testgen::Gen gen(8);
    BanditState s(4);
    std::vector<std::int64_t> exact(4, 0);  // sums in units of 2^-10
    for (int t = 0; t < 1000; ++t) {
      const std::size_t arm = t < 4 ? t : gen.integer(0, 3);
      const std::int64_t units = static_cast<std::int64_t>(gen.integer(0, 4096)) - 2048;
      exact[arm] += units;
      s.record(arm, std::ldexp(static_cast<double>(units), -10));
    }
    for (std::size_t i = 0; i < 4; ++i) {
      const double oracle = std::ldexp(static_cast<double>(exact[i]), -10) / static_cast<double>(s.pulls(i));
      CHECK(std::abs(s.mean(i) - oracle) <= 1e-12);
    }
  }

  TEST_CASE("glr examples") {
    const auto two = glr_check(make_state({4, 4}, {1.0, 0.0}), 0.1, kHeuristic);
    CHECK(two.statistic == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(two.recommendation == 0);

    const auto three = glr_check(make_state({8, 4, 4}, {1.0, 0.5, 0.0}), 0.1, {ThresholdSpec::Kind::HEURISTIC, 3});
    const double oracle = std::min(pairwise(1.0, 8, 0.5, 4), pairwise(1.0, 8, 0.0, 4));
    CHECK(three.statistic == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(three.statistic == doctest::Approx(0.8165).epsilon(1e-4));

    const auto flat = glr_check(make_state({50, 50, 50}, {0.3, 0.3, 0.3}), 0.1, {ThresholdSpec::Kind::HEURISTIC, 3});
    CHECK(flat.statistic == 0.0);
    CHECK_FALSE(flat.stop);
    CHECK(flat.recommendation == 0);

    const auto tied = glr_check(make_state({5, 5, 5}, {0.0, 1.0, 1.0}), 0.1, {ThresholdSpec::Kind::HEURISTIC, 3});
    CHECK(tied.recommendation == 1);

    CHECK_THROWS_AS(glr_check(make_state({3, 0}, {1.0, 0.0}), 0.1, kHeuristic), std::logic_error);
  }

  TEST_CASE("stop flag follows the threshold") {
    testgen::Gen gen(12);
    for (int t = 0; t < 200; ++t) {
      const std::size_t k = gen.integer(2, 6);
      std::vector<std::uint64_t> pulls(k);
      std::vector<double> means(k);
      for (std::size_t i = 0; i < k; ++i) {
        pulls[i] = gen.integer(1, 2000);
        means[i] = gen.uniform(-1, 1);
      }
      const BanditState s = make_state(pulls, means);
      const double delta = gen.log_uniform(1e-6, 0.5);
      const auto d = glr_check(s, delta, {ThresholdSpec::Kind::EXACT, k});
      CHECK(d.stop == (d.statistic >= d.threshold_value));
      CHECK(d.threshold_value ==
            doctest::Approx(std::sqrt(2.0 * threshold({ThresholdSpec::Kind::EXACT, k},
                                                      static_cast<double>(s.samples()), delta))));
    }
  }

  TEST_CASE("statistic is invariant under a location shift") {
    testgen::Gen gen(31);
    for (int t = 0; t < 100; ++t) {
      const std::size_t k = gen.integer(2, 6);
      const double shift = gen.uniform(-1, 1);
      BanditState a(k), b(k);
      for (int j = 0; j < 60; ++j) {
        const std::size_t arm = j < static_cast<int>(k) ? j : gen.integer(0, k - 1);
        const double x = gen.uniform(-1, 1);
        a.record(arm, x);
        b.record(arm, x + shift);
      }
      const ThresholdSpec spec{ThresholdSpec::Kind::HEURISTIC, k};
      const auto da = glr_check(a, 0.1, spec);
      const auto db = glr_check(b, 0.1, spec);
      CHECK(std::abs(da.statistic - db.statistic) <= 1e-12);
      CHECK(da.threshold_value == db.threshold_value);
    }
  }

  TEST_CASE("threshold kind only changes the threshold value") {
    const BanditState s = make_state({30, 20, 10}, {0.9, 0.4, 0.1});
    const auto h = glr_check(s, 0.05, {ThresholdSpec::Kind::HEURISTIC, 3});
    const auto e = glr_check(s, 0.05, {ThresholdSpec::Kind::EXACT, 3});
    CHECK(h.statistic == e.statistic);
    CHECK(h.recommendation == e.recommendation);
    CHECK(e.threshold_value > h.threshold_value);
  }

  TEST_CASE("empirical allocation") {
    BanditState s = initialized(4);
    auto w = empirical_allocation(s);
    for (double x : w) CHECK(x == 0.25);
    s.observe(0, 1, 0, 1.0);
    w = empirical_allocation(s);
    CHECK(w[0] == doctest::Approx(0.4));
    for (std::size_t i = 1; i < 4; ++i) CHECK(w[i] == doctest::Approx(0.2));
    CHECK_THROWS_AS(empirical_allocation(BanditState(3)), std::logic_error);

    testgen::Gen gen(2);
    for (int t = 0; t < 50; ++t) {
      const std::size_t k = gen.integer(2, 9);
      std::vector<std::uint64_t> pulls(k);
      for (auto& p : pulls) p = gen.integer(1, 500);
      const auto alloc = empirical_allocation(make_state(pulls, std::vector<double>(k, 0.0)));
      CHECK(std::accumulate(alloc.begin(), alloc.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
      for (double x : alloc) CHECK(x > 0.0);
    }
  }
}
