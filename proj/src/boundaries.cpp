#include "orderk/boundaries.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "orderk/errors.hpp"
#include "orderk/formulas.hpp"
#include "orderk/stats.hpp"

namespace orderk {

namespace {

constexpr double kLn2 = 0.693147180559945309417;

struct Root {
  double x;
  double f;
};

// Bisection on a verified sign change of an increasing-through-zero f.
// Narrows until both the bracket is below rel_tol and |f(mid)| is below
// residual_tol, or the bracket reaches a couple of ulps.
Root bisect(const std::function<double(double)>& f, double lo, double hi, double f_lo,
            double f_hi, double rel_tol, double residual_tol) {
  if (!(f_lo < 0.0) || !(f_hi > 0.0)) throw BracketError("bisect: bracket does not straddle zero");
  double mid = lo, f_mid = f_lo;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted at double resolution
    f_mid = f(mid);
    if (f_mid < 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= rel_tol * std::fabs(hi) && std::fabs(f_mid) <= residual_tol) break;
  }
  return {mid, f_mid};
}

// Establishes f(lo) < 0 < f(hi), growing the bracket geometrically when the
// asymptotic seed misses.
void expand_bracket(const std::function<double(double)>& f, double& lo, double& hi,
                    double& f_lo, double& f_hi, int max_growth, const std::string& what) {
  f_lo = f(lo);
  f_hi = f(hi);
  for (int g = 0; g < max_growth && (!(f_lo < 0.0) || !(f_hi > 0.0)); ++g) {
    double w = hi - lo;
    if (f_lo >= 0.0) {
      lo = std::max(lo - w, 1e-12);
      f_lo = f(lo);
    }
    if (f_hi <= 0.0) {
      hi += w;
      f_hi = f(hi);
    }
  }
  if (!(f_lo < 0.0) || !(f_hi > 0.0))
    throw BracketError(what + ": no sign change in [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
}

// p_m and p_{m+1} up to the common factor e^{-k lambda}, streamed by the
// k-term recurrence.
std::pair<ScaledReal, ScaledReal> h_pair(const OrderKParams& params, std::int64_t m) {
  std::vector<ScaledReal> h = pmf_gps(params, m + 1).values;
  return {h[static_cast<std::size_t>(m)], h[static_cast<std::size_t>(m + 1)]};
}

}  // namespace

ZeroMedianThreshold zero_median_threshold(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return {formulas::zero_median_lambda(k), formulas::zero_median_n_star(k)};
}

BoundaryPoint alpha(int k, std::int64_t n, const SolverOptions& opts) {
  const std::int64_t kappa = formulas::kappa_of(k);
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > 1 && n < kappa)
    throw std::invalid_argument("alpha(k, n) requires n >= kappa for k > 1");
  if (n < 0) throw std::invalid_argument("alpha requires n >= 0");

  // The boundary is where the median steps from nu(n) to nu(n)+1, i.e. where
  // the CDF at nu(n) = n - floor((k+4)/8) crosses 1/2.  (For k <= 3 this index
  // equals n itself.)  F is strictly decreasing in lambda, so -(F - 1/2)
  // increases through zero.
  const std::int64_t target = formulas::median_location(k, n);
  auto f = [&](double mu) {
    return -(cdf(OrderKParams(k, mu / static_cast<double>(kappa)), target) - 0.5);
  };
  double seed = formulas::alpha_predicted(k, static_cast<double>(n));
  double lo = std::max(seed - 1.0, 1e-9), hi = seed + 1.0;
  double f_lo, f_hi;
  expand_bracket(f, lo, hi, f_lo, f_hi, opts.max_bracket_growth,
                 "alpha(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  Root r = bisect(f, lo, hi, f_lo, f_hi, opts.lambda_rel_tol, opts.alpha_residual_tol);

  BoundaryPoint b;
  b.k = k;
  b.n = n;
  b.kind = BoundaryKind::MedianAlpha;
  b.value = r.x;
  b.lambda = r.x / static_cast<double>(kappa);
  b.residual = std::fabs(r.f);
  return b;
}

BoundaryPoint beta(int k, std::int64_t n, const SolverOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const std::int64_t kappa = formulas::kappa_of(k);
  if (k == 1) {
    // Joint maxima of the standard Poisson distribution sit at lambda - 1 and
    // lambda for integer lambda, so the boundary is exactly n.
    BoundaryPoint b;
    b.k = 1;
    b.n = n;
    b.kind = BoundaryKind::ModeBeta;
    b.value = static_cast<double>(n);
    b.lambda = static_cast<double>(n);
    b.residual = 0.0;
    b.modes_at_boundary = std::vector<std::int64_t>{n - 1, n};
    return b;
  }
  if (n < 2 * kappa) throw std::invalid_argument("beta(k, n) requires n >= 2 kappa for k > 1");

  const std::int64_t m = formulas::mode_location(k, n);
  // Signed relative gap (p_{m+1} - p_m)/max: negative while the mode is m,
  // crossing zero where the mode steps to m+1.
  auto f = [&](double mu) {
    auto [pm, pm1] = h_pair(OrderKParams(k, mu / static_cast<double>(kappa)), m);
    return signed_rel_diff(pm1, pm);
  };
  double seed = formulas::beta_predicted(k, static_cast<double>(n));
  double lo = std::max(seed - 1.0, 1e-9), hi = seed + 1.0;
  double f_lo, f_hi;
  expand_bracket(f, lo, hi, f_lo, f_hi, opts.max_bracket_growth,
                 "beta(k=" + std::to_string(k) + ", n=" + std::to_string(n) + ")");
  Root r = bisect(f, lo, hi, f_lo, f_hi, opts.lambda_rel_tol, opts.beta_residual_tol);

  // The tie must also be the global maximum.
  OrderKParams at_root(k, r.x / static_cast<double>(kappa));
  std::vector<std::int64_t> tied = mode(at_root);
  bool ok = std::find(tied.begin(), tied.end(), m) != tied.end() &&
            std::find(tied.begin(), tied.end(), m + 1) != tied.end();
  for (std::int64_t t : tied)
    if (t != m && t != m + 1) ok = false;
  if (!ok)
    throw SolverError("beta(k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                      "): global maximum at the solved tie is not {m, m+1}");

  BoundaryPoint b;
  b.k = k;
  b.n = n;
  b.kind = BoundaryKind::ModeBeta;
  b.value = r.x;
  b.lambda = r.x / static_cast<double>(kappa);
  b.residual = std::fabs(r.f);
  b.modes_at_boundary = std::vector<std::int64_t>{m, m + 1};
  return b;
}

FirstDoubleMode first_double_mode(int k, double lambda_max, const SolverOptions& opts) {
  if (k < 2) throw std::invalid_argument("first_double_mode requires k >= 2");
  const double step = std::min(1e-3, std::pow(static_cast<double>(k), -0.875) / 100.0);

  ModeOptions scan_opts;
  scan_opts.fast = true;  // all compared masses sit at or below the h = 1 line here

  std::vector<std::int64_t> prev = mode(OrderKParams(k, step), scan_opts);
  double prev_lambda = step;
  std::vector<std::int64_t> cur;
  double cur_lambda = 0.0;
  bool found = false;
  for (double lam = 2.0 * step; lam <= lambda_max; lam += step) {
    cur = mode(OrderKParams(k, lam), scan_opts);
    if (cur != prev) {
      cur_lambda = lam;
      found = true;
      break;
    }
    prev_lambda = lam;
  }
  if (!found)
    throw BracketError("first_double_mode(k=" + std::to_string(k) +
                       "): no mode change below lambda_max=" + std::to_string(lambda_max));

  std::int64_t a = *std::max_element(prev.begin(), prev.end());
  std::int64_t b = *std::max_element(cur.begin(), cur.end());

  for (int attempt = 0; attempt < 4; ++attempt) {
    if (b <= a)
      throw SolverError("first_double_mode(k=" + std::to_string(k) + "): mode set moved down");
    auto f = [&](double lam) {
      std::vector<ScaledReal> h =
          detail::km_h_table_floating(OrderKParams(k, lam), std::max(a, b));
      return signed_rel_diff(h[static_cast<std::size_t>(b)], h[static_cast<std::size_t>(a)]);
    };
    double f_lo = f(prev_lambda), f_hi = f(cur_lambda);
    if (!(f_lo < 0.0)) f_lo = -1e-30;  // tie can sit exactly on a scan point
    // The tie tolerance can flag the change a hair before the true crossing.
    for (int g = 0; g < 8 && !(f_hi > 0.0); ++g) {
      cur_lambda += step;
      f_hi = f(cur_lambda);
    }
    if (!(f_hi > 0.0))
      throw SolverError("first_double_mode(k=" + std::to_string(k) + "): lost the sign change");
    Root r = bisect(f, prev_lambda, cur_lambda, f_lo, f_hi, opts.lambda_rel_tol,
                    opts.beta_residual_tol);

    // Confirm with the k-term engine that {a, b} is the global joint maximum.
    std::vector<std::int64_t> tied = mode(OrderKParams(k, r.x));
    std::int64_t top = *std::max_element(tied.begin(), tied.end());
    if (std::find(tied.begin(), tied.end(), a) != tied.end() &&
        std::find(tied.begin(), tied.end(), b) != tied.end() && top <= b) {
      FirstDoubleMode out;
      out.lambda = r.x;
      out.modes = tied;
      return out;
    }
    // Another support point overtook first; solve the earlier tie instead.
    cur_lambda = r.x;
    b = top;
  }
  throw SolverError("first_double_mode(k=" + std::to_string(k) + "): ambiguous competing maxima");
}

double zero_mode_sup(int k, const SolverOptions& opts) {
  if (k < 2) throw std::invalid_argument("zero_mode_sup requires k >= 2");
  FirstDoubleMode fdm = first_double_mode(k, 2.0, opts);
  const std::int64_t kappa = formulas::kappa_of(k);
  if (std::find(fdm.modes.begin(), fdm.modes.end(), 0) != fdm.modes.end())
    return static_cast<double>(kappa) * fdm.lambda;

  // The mode left zero before the located tie; bisect the predicate directly.
  ModeOptions scan_opts;
  scan_opts.fast = true;
  auto is_zero_mode = [&](double lam) {
    std::vector<std::int64_t> m = mode(OrderKParams(k, lam), scan_opts);
    return m == std::vector<std::int64_t>{0};
  };
  double lo = 1e-9, hi = fdm.lambda;
  if (!is_zero_mode(lo)) throw SolverError("zero_mode_sup: mode not zero at lambda ~ 0");
  for (int it = 0; it < 120 && hi - lo > opts.lambda_rel_tol * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (is_zero_mode(mid) ? lo : hi) = mid;
  }
  return static_cast<double>(kappa) * 0.5 * (lo + hi);
}

}  // namespace orderk
