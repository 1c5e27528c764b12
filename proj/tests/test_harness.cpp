#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "orderk/harness.hpp"

using namespace orderk;

namespace {
HarnessConfig fast_cfg() {
  HarnessConfig c;
  c.threads = 4;
  c.median_k_max = 8;
  c.mode_k_max = 8;
  c.n_span = 15;
  c.limits_k_max = 5;
  c.limits_n_span = 8;
  c.power_law_k_max = 200;
  c.ordering_samples = 40;
  return c;
}
}  // namespace

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(1000, 8, [&](std::int64_t i) { hits[static_cast<std::size_t>(i)]++; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("structural suites pass") {
  for (const char* name : {"table-1-tuples", "polynomial-structure"}) {
    SuiteResult r = run_suite(name, fast_cfg());
    CAPTURE(name);
    CHECK(r.check.passed);
  }
}

TEST_CASE("formula suites pass on reduced grids") {
  HarnessConfig cfg = fast_cfg();
  CheckResult med = check_median_formula(8, 15, cfg);
  CHECK(med.passed);
  CheckResult mod = check_mode_formula(8, 15, cfg);
  CHECK(mod.passed);
  CheckResult lim = check_limits(5, 8, cfg);
  CHECK(lim.passed);
  CheckResult ord = check_ordering(40, cfg);
  CHECK(ord.passed);
}

TEST_CASE("zero-median threshold suite") {
  CheckResult r = check_zero_median_threshold(25);
  CHECK(r.passed);
  CHECK(r.max_abs_deviation <= 1e-14);
}

TEST_CASE("expansion fit recovers coefficients of the right size") {
  HarnessConfig cfg = fast_cfg();
  FitReport f = check_alpha_expansion(2, {50, 100, 200, 350}, cfg);
  double c1 = f.fitted_coefficients.at("c1");
  double c1p = f.fitted_coefficients.at("c1_predicted");
  CHECK(std::fabs(c1 - c1p) < 0.3 * std::fabs(c1p) + 1e-3);
  // prediction error peaks near mean 240 at k=2 (~7.6e-7), within the decade
  CHECK(f.residual_max < 1e-6);
  CHECK(f.residual_rms <= f.residual_max);
}

TEST_CASE("power-law fit on a reduced grid gives a sane exponent") {
  FitReport f = fit_zero_mode_power_law(320, fast_cfg());
  double b = f.fitted_coefficients.at("exponent");
  CHECK(b > 1.0);
  CHECK(b < 1.3);
  CHECK(f.fitted_coefficients.at("lambda_exponent") == doctest::Approx(b - 2.0));
}

TEST_CASE("checks are deterministic, including across thread counts") {
  HarnessConfig one = fast_cfg();
  one.threads = 1;
  HarnessConfig many = fast_cfg();
  many.threads = 8;
  CheckResult a = check_ordering(25, one);
  CheckResult b = check_ordering(25, many);
  CHECK(a.passed == b.passed);
  CHECK(a.max_abs_deviation == b.max_abs_deviation);
  CHECK(a.counterexamples.size() == b.counterexamples.size());
  FitReport fa = check_alpha_expansion(2, {50, 100}, one);
  FitReport fb = check_alpha_expansion(2, {50, 100}, many);
  CHECK(fa.residual_max == fb.residual_max);
  CHECK(fa.fitted_coefficients.at("c1") == fb.fitted_coefficients.at("c1"));
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(run_suite("no-such-suite", {}), std::invalid_argument);
  for (const auto& n : suite_names()) CHECK(!n.empty());
}
