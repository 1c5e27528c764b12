#pragma once

#include <cstdint>
#include <vector>

#include "orderk/params.hpp"
#include "orderk/pmf.hpp"

namespace orderk {

struct SummaryStats {
  OrderKParams params;
  double mean = 0.0;
  double variance = 0.0;
  std::int64_t median = 0;
  std::vector<std::int64_t> modes;
  double cdf_at_median = 0.0;
  bool multimodal = false;
};

// Closed forms: (k(k+1)/2 lambda, k(k+1)(2k+1)/6 lambda).
std::pair<double, double> mean_variance(const OrderKParams& params);

// F(n) = sum_{j<=n} p_j, accumulated in scaled arithmetic and clamped to [0,1].
double cdf(const OrderKParams& params, std::int64_t n);

// Smallest n with F(n) >= 1/2.  Throws SolverError if the scan passes
// mean + 12 sigma + 10 without reaching 1/2 (cannot happen on valid input).
std::int64_t median(const OrderKParams& params);

struct ModeOptions {
  double tie_rel_tol = 1e-9;     // relative gap treated as a joint maximum
  std::int64_t guard = -1;       // extra scan width past floor(kappa*lambda); default 2k
  bool fast = false;             // four-term floating recurrence instead of the k-term one
};

// All support points within tie_rel_tol of the global pmf maximum, ascending.
// The scan covers [0, floor(kappa*lambda) + guard] so the claimed upper bound
// floor(kappa*lambda) is checked by tests rather than assumed.
std::vector<std::int64_t> mode(const OrderKParams& params, const ModeOptions& opts = {});

SummaryStats summarize(const OrderKParams& params);

// Mean and variance of the truncated table (raw sums, no renormalisation).
std::pair<double, double> empirical_moments(const PmfTable& table);

}  // namespace orderk
