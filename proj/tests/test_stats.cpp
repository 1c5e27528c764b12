#include <doctest.h>

#include <cmath>

#include "orderk/formulas.hpp"
#include "orderk/stats.hpp"

using namespace orderk;

TEST_CASE("closed-form moments") {
  CHECK(mean_variance(OrderKParams(2, 1.0)) == std::pair<double, double>{3.0, 5.0});
  CHECK(mean_variance(OrderKParams(1, 7.0)) == std::pair<double, double>{7.0, 7.0});
  auto [m, v] = mean_variance(OrderKParams(15, 2.0));
  CHECK(m == 240.0);
  CHECK(v == 2480.0);
}

TEST_CASE("cdf basics") {
  CHECK(cdf(OrderKParams(3, 0.4), 0) == doctest::Approx(std::exp(-1.2)).epsilon(1e-14));
  CHECK(cdf(OrderKParams(1, std::log(2.0)), 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(OrderKParams(3, 1.0), 200) == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(cdf(OrderKParams(3, 1.0), -1) == 0.0);
  // strictly decreasing in lambda at fixed n
  for (int n : {0, 3, 8}) {
    double prev = cdf(OrderKParams(3, 0.2), n);
    for (double l : {0.4, 0.8, 1.3, 2.0}) {
      double cur = cdf(OrderKParams(3, l), n);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("median") {
  CHECK(median(OrderKParams(4, 0.1)) == 0);  // below (ln 2)/4
  for (std::int64_t n : {1, 2, 7, 30}) CHECK(median(OrderKParams(1, double(n))) == n);
  // k=3: floor((3+4)/8) = 0, so the median equals the integer mean from kappa on
  for (std::int64_t n = 6; n <= 56; n += 5)
    CHECK(median(OrderKParams(3, double(n) / 6.0)) == n);
  // nondecreasing in lambda
  std::int64_t prev = 0;
  for (double l = 0.05; l < 3.0; l += 0.07) {
    std::int64_t med = median(OrderKParams(3, l));
    CHECK(med >= prev);
    prev = med;
  }
}

TEST_CASE("mode") {
  CHECK(mode(OrderKParams(2, 0.5 / 3.0)) == std::vector<std::int64_t>{0});
  CHECK(mode(OrderKParams(15, 2.0)) == std::vector<std::int64_t>{234});
  // exact double mode of the standard Poisson at integer lambda
  CHECK(mode(OrderKParams(1, 5.0)) == std::vector<std::int64_t>{4, 5});
  // joint maxima at 0 and 2 for k=2 at lambda = sqrt(3) - 1
  CHECK(mode(OrderKParams(2, std::sqrt(3.0) - 1.0)) == std::vector<std::int64_t>{0, 2});
  // fast path agrees where it is valid
  ModeOptions fast;
  fast.fast = true;
  for (double l : {0.2, 0.7320, 1.0, 2.3})
    CHECK(mode(OrderKParams(2, l), fast) == mode(OrderKParams(2, l)));
  // sharp bounds on a small sample
  for (int k : {1, 2, 5, 9}) {
    for (double l : {0.03, 0.4, 1.0, 2.6}) {
      auto m = mode(OrderKParams(k, l));
      for (std::int64_t mi : m) {
        CHECK(mi >= formulas::mode_lower_bound(k, l));
        CHECK(mi <= formulas::mode_upper_bound(k, l));
      }
    }
  }
}

TEST_CASE("summarize") {
  SummaryStats s = summarize(OrderKParams(2, 1.0));
  CHECK(s.mean == 3.0);
  CHECK(s.variance == 5.0);
  CHECK(s.median == 3);
  CHECK(s.modes == std::vector<std::int64_t>{2});
  CHECK_FALSE(s.multimodal);
  CHECK(s.cdf_at_median == doctest::Approx(std::exp(-2.0) * 14.0 / 3.0).epsilon(1e-13));
  CHECK(s.cdf_at_median >= 0.5);
  CHECK(cdf(s.params, s.median - 1) < 0.5);

  SummaryStats t = summarize(OrderKParams(3, 2.0));
  CHECK(t.median == 12);
  CHECK(t.modes == std::vector<std::int64_t>{11});

  SummaryStats u = summarize(OrderKParams(1, 0.1));
  CHECK(u.median == 0);
  CHECK(u.modes == std::vector<std::int64_t>{0});

  SummaryStats d = summarize(OrderKParams(1, 4.0));
  CHECK(d.multimodal);
  CHECK(d.modes == std::vector<std::int64_t>{3, 4});
}

TEST_CASE("empirical moments against the closed forms") {
  for (auto [k, l] : {std::pair<int, double>{3, 1.0}, {1, 0.5}, {6, 2.0}}) {
    OrderKParams p(k, l);
    double bound = p.mean + 14.0 * std::sqrt(p.variance()) + 60.0;
    auto [m1, m2] = empirical_moments(pmf_gps(p, static_cast<std::int64_t>(bound)));
    auto [mean, var] = mean_variance(p);
    CHECK(m1 == doctest::Approx(mean).epsilon(1e-9));
    CHECK(m2 == doctest::Approx(var).epsilon(1e-9));
  }
}
