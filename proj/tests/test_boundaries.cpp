#include <doctest.h>

#include <cmath>

#include "orderk/boundaries.hpp"
#include "orderk/errors.hpp"
#include "orderk/formulas.hpp"
#include "orderk/stats.hpp"

using namespace orderk;

TEST_CASE("zero-median threshold closed form") {
  auto t1 = zero_median_threshold(1);
  CHECK(t1.lambda_star == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(t1.n_star == 0);
  auto t2 = zero_median_threshold(2);
  CHECK(1.5 * t2.lambda_star * 2.0 == doctest::Approx(1.0397).epsilon(1e-4));
  CHECK(t2.n_star == 1);
  CHECK(zero_median_threshold(4).n_star == 1);
  CHECK(zero_median_threshold(10).n_star == 3);
}

TEST_CASE("alpha at k=1") {
  BoundaryPoint a0 = alpha(1, 0);
  CHECK(a0.value == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(a0.residual <= 1e-13);

  BoundaryPoint a100 = alpha(1, 100);
  CHECK(std::fabs(a100.value - formulas::alpha_k1_expansion(100.0)) < 1e-6);
  CHECK(a100.residual <= 1e-13);
}

TEST_CASE("k=1 expansion remainder decays like n^-4") {
  // measured: dev * n^4 ~ -1.4e-3 for n in {10, 30, 100}; below the solver
  // noise floor (~1e-12) past n ~ 300
  auto dev = [](std::int64_t n) {
    return std::fabs(alpha(1, n).value - formulas::alpha_k1_expansion(double(n)));
  };
  double d10 = dev(10), d30 = dev(30), d100 = dev(100), d1000 = dev(1000);
  CHECK(d10 / d30 > 50.0);   // (30/10)^4 = 81
  CHECK(d10 / d30 < 130.0);
  CHECK(d100 < 5e-11);
  CHECK(d1000 <= d100 / 1e3 + 1e-12);
}

TEST_CASE("the median steps exactly at a solved alpha") {
  for (auto [k, n] : {std::pair<int, std::int64_t>{1, 7}, {3, 9}, {10, 60}}) {
    BoundaryPoint b = alpha(k, n);
    const double kap = static_cast<double>(formulas::kappa_of(k));
    const std::int64_t nu = formulas::median_location(k, n);
    const double eps = b.value * 1e-9;
    CHECK(cdf(OrderKParams(k, (b.value - eps) / kap), nu) > 0.5);
    CHECK(cdf(OrderKParams(k, (b.value + eps) / kap), nu) < 0.5);
    CHECK(median(OrderKParams(k, (b.value - eps) / kap)) == nu);
    CHECK(median(OrderKParams(k, (b.value + eps) / kap)) == nu + 1);
  }
}

TEST_CASE("interval midpoints carry the conjectured median") {
  for (auto [k, n] : {std::pair<int, std::int64_t>{3, 8}, {10, 60}, {5, 17}}) {
    double mid = 0.5 * (alpha(k, n - 1).value + alpha(k, n).value);
    const double kap = static_cast<double>(formulas::kappa_of(k));
    CHECK(median(OrderKParams(k, mid / kap)) == formulas::median_location(k, n));
  }
}

TEST_CASE("beta basics") {
  BoundaryPoint b1 = beta(1, 5);
  CHECK(b1.value == 5.0);
  CHECK(b1.residual == 0.0);
  CHECK(b1.modes_at_boundary == std::vector<std::int64_t>{4, 5});

  BoundaryPoint b2 = beta(2, 15);
  CHECK(b2.modes_at_boundary == std::vector<std::int64_t>{14, 15});
  CHECK(b2.value > 15.0);
  CHECK(b2.value < 16.0);
  CHECK(b2.residual <= 1e-12);
  // the mode steps across the boundary; the offset must clear the tie window,
  // whose width in the mean scale is about tie_tol * sigma^2
  const double eps = 1e-4;
  CHECK(mode(OrderKParams(2, (b2.value - eps) / 3.0)) == std::vector<std::int64_t>{14});
  CHECK(mode(OrderKParams(2, (b2.value + eps) / 3.0)) == std::vector<std::int64_t>{15});
}

TEST_CASE("interval midpoints carry the conjectured mode") {
  for (auto [k, n] : {std::pair<int, std::int64_t>{2, 16}, {5, 32}}) {
    double mid = 0.5 * (beta(k, n - 1).value + beta(k, n).value);
    const double kap = static_cast<double>(formulas::kappa_of(k));
    CHECK(mode(OrderKParams(k, mid / kap)) ==
          std::vector<std::int64_t>{formulas::mode_location(k, n)});
  }
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(alpha(2, 2), std::invalid_argument);   // n < kappa
  CHECK_THROWS_AS(beta(2, 5), std::invalid_argument);    // n < 2 kappa
  CHECK_THROWS_AS(first_double_mode(1), std::invalid_argument);
  CHECK_THROWS_AS(zero_mode_sup(1), std::invalid_argument);
  CHECK_THROWS_AS(first_double_mode(2, 0.1), BracketError);  // tie sits at 0.732
}

TEST_CASE("first double modes") {
  FirstDoubleMode d2 = first_double_mode(2);
  CHECK(d2.lambda == doctest::Approx(std::sqrt(3.0) - 1.0).epsilon(1e-9));
  CHECK(d2.modes == std::vector<std::int64_t>{0, 2});

  CHECK(first_double_mode(5).modes == std::vector<std::int64_t>{0, 5});

  FirstDoubleMode d15 = first_double_mode(15);
  CHECK(std::fabs(d15.lambda - 0.25023) < 5e-4);
  CHECK(d15.modes == std::vector<std::int64_t>{0, 25});

  CHECK(zero_mode_sup(2) == doctest::Approx(3.0 * (std::sqrt(3.0) - 1.0)).epsilon(1e-8));
  CHECK(zero_mode_sup(15) == doctest::Approx(120.0 * d15.lambda).epsilon(1e-10));
}

TEST_CASE("alpha asymptotics stay within the expected band") {
  // Mean 5500 is the lower edge of the fitted range at k=10; the prediction
  // error measured there is 7.8e-8 (checked against the exact engine) and it
  // falls below 1e-8 by mean 55000.
  BoundaryPoint b = alpha(10, 5500);
  CHECK(std::fabs(b.value - formulas::alpha_predicted(10, 5500.0)) < 1.2e-7);
  CHECK(b.value - 5500.0 > 0.0);
  CHECK(b.value - 5500.0 < 1.0);

  BoundaryPoint big = alpha(10, 55000);
  CHECK(std::fabs(big.value - formulas::alpha_predicted(10, 55000.0)) < 1e-8);
}
