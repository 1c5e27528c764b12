#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "orderk/params.hpp"

namespace orderk {

enum class BoundaryKind { MedianAlpha, ModeBeta };

// A solved parameter threshold, in mean scale (value = kappa*lambda at the
// boundary).  For MedianAlpha the CDF at n equals 1/2 there; for ModeBeta the
// pmf has a joint maximum at two consecutive support points.
struct BoundaryPoint {
  int k = 1;
  std::int64_t n = 0;
  BoundaryKind kind = BoundaryKind::MedianAlpha;
  double value = 0.0;     // kappa*lambda at the boundary
  double lambda = 0.0;    // value / kappa
  double residual = 0.0;  // |F(n) - 1/2| resp. relative tie gap at the solution
  std::optional<std::vector<std::int64_t>> modes_at_boundary;
};

struct SolverOptions {
  double lambda_rel_tol = 1e-13;  // bisection width target, relative
  double alpha_residual_tol = 1e-13;
  double beta_residual_tol = 1e-12;
  int max_bracket_growth = 8;
};

// Closed form: the median is zero iff lambda <= (ln 2)/k; n_star is the largest
// integer mean with zero median.
struct ZeroMedianThreshold {
  double lambda_star;
  std::int64_t n_star;
};
ZeroMedianThreshold zero_median_threshold(int k);

// Mean-scale boundary where F(n) = 1/2 exactly.  Requires n >= kappa for k > 1
// (n >= 0 for k = 1).  Bisection on a verified sign change, bracket seeded from
// the asymptotic prediction +-1.
BoundaryPoint alpha(int k, std::int64_t n, const SolverOptions& opts = {});

// Mean-scale boundary where p_m = p_{m+1} for m = n - floor((3k+5)/8), i.e.
// where the mode steps from m to m+1.  Requires n >= 2 kappa and k > 1; the
// exact solution n is returned for k = 1.
BoundaryPoint beta(int k, std::int64_t n, const SolverOptions& opts = {});

struct FirstDoubleMode {
  double lambda = 0.0;
  std::vector<std::int64_t> modes;
};

// Scans lambda upward from zero until the mode set first changes, then solves
// the tie between the two competing maxima.  Step 1e-3, shrinking like
// k^{-7/8}/100 for large k where the zero-mode region ends earlier in lambda.
FirstDoubleMode first_double_mode(int k, double lambda_max = 2.0,
                                  const SolverOptions& opts = {});

// sup(kappa*lambda) such that the mode set is exactly {0}.
double zero_mode_sup(int k, const SolverOptions& opts = {});

}  // namespace orderk
