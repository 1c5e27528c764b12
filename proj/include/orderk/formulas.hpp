#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace orderk::formulas {

// Closed forms and conjectured asymptotic expressions for the Poisson
// distribution of order k.  n always denotes an integer value of the mean,
// i.e. lambda = n / kappa.

inline std::int64_t kappa_of(int k) {
  return static_cast<std::int64_t>(k) * (k + 1) / 2;
}

// mean = k(k+1)/2 * lambda, variance = k(k+1)(2k+1)/6 * lambda
inline double mean_closed_form(int k, double lambda) {
  return static_cast<double>(kappa_of(k)) * lambda;
}
inline double variance_closed_form(int k, double lambda) {
  return static_cast<double>(k) * (k + 1) * (2 * k + 1) * lambda / 6.0;
}

// Conjectured median for integer mean n >= kappa:  nu = n - floor((k+4)/8).
inline std::int64_t median_location(int k, std::int64_t n) {
  return n - (static_cast<std::int64_t>(k) + 4) / 8;
}

// Conjectured mode for integer mean n >= 2*kappa:  m = n - floor((3k+5)/8).
inline std::int64_t mode_location(int k, std::int64_t n) {
  return n - (3 * static_cast<std::int64_t>(k) + 5) / 8;
}

// Unique mode for integer lambda and 2 <= k <= 5:  m = kappa*lambda - floor(k/2).
inline std::int64_t mode_integer_lambda(int k, std::int64_t lambda) {
  return kappa_of(k) * lambda - k / 2;
}

// Sharp bounds on the mode: max{0, floor(kl) - kappa + 1 - [k==1]} <= m <= floor(kl).
inline std::int64_t mode_upper_bound(int k, double lambda) {
  (void)k;
  return static_cast<std::int64_t>(std::floor(static_cast<double>(kappa_of(k)) * lambda));
}
inline std::int64_t mode_lower_bound(int k, double lambda) {
  std::int64_t lb = mode_upper_bound(k, lambda) - kappa_of(k) + 1 - (k == 1 ? 1 : 0);
  return std::max<std::int64_t>(0, lb);
}

// Largest lambda with median zero, and the largest integer mean with median zero.
inline double zero_median_lambda(int k) {
  return 0.693147180559945309417 / static_cast<double>(k);
}
inline std::int64_t zero_median_n_star(int k) {
  return static_cast<std::int64_t>(std::floor(0.5 * (k + 1) * 0.693147180559945309417));
}

// Fractional part of (k+4)/8 resp. (3k+5)/8, exact in binary arithmetic.
inline double median_frac_term(int k) {
  return static_cast<double>((k + 4) % 8) / 8.0;
}
inline double mode_frac_term(int k) {
  return static_cast<double>((3 * k + 5) % 8) / 8.0;
}

// k-only terms of the boundary expansions (conjectured exact):
//   alpha_{k,n} - n -> frac((k+4)/8) + k/(8(2k+1))
//   beta_{k,n}  - n -> frac((3k+5)/8) + (k-1)/(8(2k+1))
inline double alpha_k_terms(int k) {
  return median_frac_term(k) + static_cast<double>(k) / (8.0 * (2 * k + 1));
}
inline double beta_k_terms(int k) {
  return mode_frac_term(k) + static_cast<double>(k - 1) / (8.0 * (2 * k + 1));
}

// Fitted 1/n corrections to the boundary expansions.
inline double alpha_correction(int k, double n) {
  double kap = static_cast<double>(kappa_of(k));
  double lead = 3.0 * kap / 349.0 + 13.0 / 1000.0;
  double second = 13.0 / 1500.0 * (static_cast<double>((k + 4) / 8) - 3.0);
  return lead / n + second * kap / (n * n);
}
inline double beta_correction(int k, double n) {
  double kap = static_cast<double>(kappa_of(k));
  double lead = kap / (16.0 + 8.0 / 9.0) - 1.0 / (13.0 + 2.0 / 3.0);
  double second = static_cast<double>((3 * k + 5) / 8) * 3.0 * kap / 50.0;
  return lead / n + second / (n * n);
}

// Full asymptotic predictions for the boundary values (mean scale).
inline double alpha_predicted(int k, double n) {
  return n + alpha_k_terms(k) + (n > 0 ? alpha_correction(k, n) : 0.0);
}
inline double beta_predicted(int k, double n) {
  return n + beta_k_terms(k) + beta_correction(k, n);
}

// Median boundary expansion for the standard Poisson distribution:
//   alpha_n = n + 2/3 + 8/(405 n) - 64/(5103 n^2) + 2944/(492075 n^3) + O(n^-4).
inline double alpha_k1_expansion(double n) {
  return n + 2.0 / 3.0 + 8.0 / (405.0 * n) - 64.0 / (5103.0 * n * n) +
         2944.0 / (492075.0 * n * n * n);
}

// Conjectured limits of mean-minus-median and mean-minus-mode as n -> infinity.
inline double mean_minus_median_limit(int k) {
  return (2.0 * k + 9.0) / 16.0 - 1.0 / (16.0 * (2 * k + 1));
}
inline double mean_minus_mode_limit(int k) {
  return (6.0 * k + 11.0) / 16.0 - 3.0 / (16.0 * (2 * k + 1));
}

// First integer mean of the monotone regime of alpha_{k,n} - n resp. beta_{k,n} - n.
inline std::int64_t alpha_monotone_regime_start(int k) {
  std::int64_t kap = kappa_of(k);
  if (k == 2) return 3 * kap;
  if (k <= 6) return 2 * kap;
  return kap;
}
inline std::int64_t beta_monotone_regime_start(int k) {
  std::int64_t kap = kappa_of(k);
  if (k == 2) return 5 * kap;
  if (k <= 4) return 3 * kap;
  return 2 * kap;
}

}  // namespace orderk::formulas
