#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace orderk {

// One observed violation of a checked pattern.
struct Counterexample {
  int k = 0;
  double x = 0.0;  // n or lambda, per check
  double observed = 0.0;
  double expected = 0.0;
  std::string note;
};

struct CheckResult {
  std::string name;
  std::string params_range;
  bool passed = false;
  std::vector<Counterexample> counterexamples;
  double max_abs_deviation = 0.0;
};

enum class FitTarget { AlphaExpansion, BetaExpansion, ZeroModePowerLaw };

// Least-squares fit report.  residual_max/rms measure the raw deviation of the
// solved boundaries from the closed-form prediction over the grid.
struct FitReport {
  FitTarget target = FitTarget::AlphaExpansion;
  std::string grid;
  std::map<std::string, double> fitted_coefficients;
  double residual_max = 0.0;
  double residual_rms = 0.0;
};

struct HarnessConfig {
  int threads = 1;
  // Grid reductions for fast unit runs; <= 0 means the default full grid.
  int median_k_max = 0;
  int mode_k_max = 0;
  int n_span = 0;
  int limits_k_max = 0;
  int limits_n_span = 0;
  int power_law_k_max = 0;
  int ordering_samples = 0;
};

// nu = n - floor((k+4)/8) over k in [1, k_max], n in [kappa, kappa + n_span].
CheckResult check_median_formula(int k_max, int n_span, const HarnessConfig& cfg = {});

// m = n - floor((3k+5)/8) over k in [2, k_max], n in [2 kappa, 2 kappa + n_span],
// with uniqueness of the mode; also the integer-lambda form kl - floor(k/2) for
// k in {2..5}, lambda in {1,2,3}, and the k=15, lambda=2 spot value 234.
CheckResult check_mode_formula(int k_max, int n_span, const HarnessConfig& cfg = {});

// F(0) = 1/2 at lambda = (ln 2)/k to 1e-14 and the median flips 0 -> 1 across
// the threshold, k in [1, k_max].
CheckResult check_zero_median_threshold(int k_max);

// Solved alpha(1, n) against the four-term expansion, |dev| <= 1e-6 for n >= 100.
CheckResult check_k1_alpha_benchmark(const std::vector<std::int64_t>& ns = {100, 300, 1000});

// Solves the boundary over n = kappa*lambda for lambda in lambdas, fits
// c1/n + c2*kappa/n^2 to the remainder, and reports the raw deviation from the
// full prediction.  Coefficients keyed c1, c2, c1_predicted, c2_predicted.
FitReport check_alpha_expansion(int k, const std::vector<double>& lambdas,
                                const HarnessConfig& cfg = {});
FitReport check_beta_expansion(int k, const std::vector<double>& lambdas,
                               const HarnessConfig& cfg = {});

// Monotone-regime sweep: alpha - n and beta - n lie in (0,1), decrease in n,
// stay above the conjectured limits and close to within 0.05 at the last n.
CheckResult check_limits(int k_max, int n_span, const HarnessConfig& cfg = {});

// Mode/median/mean orderings: systematic sweep for n >= 2 kappa (k <= 10) and a
// seeded random sample with 1 <= n < 2 kappa, k in [2, 100].
CheckResult check_ordering(int samples, const HarnessConfig& cfg = {});

// log-log fit of sup(kappa*lambda : mode = {0}) over a log-spaced k grid;
// exponent keyed "exponent", fitted over k >= 100.
FitReport fit_zero_mode_power_law(int k_max = 2000, const HarnessConfig& cfg = {});

// Named verification suites (stable identifiers, listed by the CLI).
struct SuiteResult {
  CheckResult check;
  std::vector<FitReport> fits;
};

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const HarnessConfig& cfg = {});

// Runs fn(i) for i in [0, count) across the configured number of threads.
void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace orderk
