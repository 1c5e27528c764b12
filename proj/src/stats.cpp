#include "orderk/stats.hpp"

#include <algorithm>
#include <cmath>

#include "orderk/errors.hpp"
#include "orderk/formulas.hpp"

namespace orderk {

namespace {

// Streams h(0), h(1), ... of the k-term recurrence with a ring buffer, so CDF
// evaluations inside the boundary solvers never allocate a full table.
class HStream {
 public:
  explicit HStream(const OrderKParams& params)
      : k_(params.k), ring_(static_cast<std::size_t>(params.k) + 1) {
    coef_.resize(static_cast<std::size_t>(k_) + 1);
    for (int j = 1; j <= k_; ++j)
      coef_[static_cast<std::size_t>(j)] = static_cast<double>(j) * params.lambda;
  }

  ScaledReal next() {
    if (n_ == 0) {
      ring_[0] = ScaledReal(1.0);
      ++n_;
      return ring_[0];
    }
    ScaledAccumulator acc;
    const int jmax = static_cast<int>(std::min<std::int64_t>(k_, n_));
    for (int j = jmax; j >= 1; --j)
      acc.add(ring_[idx(n_ - j)] * coef_[static_cast<std::size_t>(j)]);
    ScaledReal h = acc.total() / static_cast<double>(n_);
    ring_[idx(n_)] = h;
    ++n_;
    return h;
  }

 private:
  std::size_t idx(std::int64_t n) const {
    return static_cast<std::size_t>(n % static_cast<std::int64_t>(ring_.size()));
  }
  int k_;
  std::int64_t n_ = 0;
  std::vector<ScaledReal> ring_;
  std::vector<double> coef_;
};

}  // namespace

std::pair<double, double> mean_variance(const OrderKParams& params) {
  return {formulas::mean_closed_form(params.k, params.lambda),
          formulas::variance_closed_form(params.k, params.lambda)};
}

double cdf(const OrderKParams& params, std::int64_t n) {
  if (n < 0) return 0.0;
  HStream hs(params);
  ScaledAccumulator acc;
  for (std::int64_t j = 0; j <= n; ++j) acc.add(hs.next());
  ScaledReal f = acc.total() * scaled_exp_neg(static_cast<double>(params.k) * params.lambda);
  return std::clamp(f.to_double(), 0.0, 1.0);
}

std::int64_t median(const OrderKParams& params) {
  const double sigma = std::sqrt(params.variance());
  const std::int64_t cap =
      static_cast<std::int64_t>(std::ceil(params.mean + 12.0 * sigma)) + 10;
  const ScaledReal scale = scaled_exp_neg(static_cast<double>(params.k) * params.lambda);
  HStream hs(params);
  ScaledAccumulator acc;
  for (std::int64_t n = 0; n <= cap; ++n) {
    acc.add(hs.next());
    if ((acc.total() * scale).to_double() >= 0.5) return n;
  }
  throw SolverError("median scan exceeded mean + 12 sigma + 10");
}

std::vector<std::int64_t> mode(const OrderKParams& params, const ModeOptions& opts) {
  const std::int64_t guard = opts.guard >= 0 ? opts.guard : 2 * params.k;
  const std::int64_t bound =
      static_cast<std::int64_t>(std::floor(static_cast<double>(params.kappa) * params.lambda)) +
      guard;

  std::vector<ScaledReal> h;
  if (opts.fast) {
    h = detail::km_h_table_floating(params, bound);
  } else {
    h = pmf_gps(params, bound).values;  // constant factor is irrelevant to argmax
  }

  ScaledReal best = h[0];
  for (const auto& v : h) best = std::max(best, v);
  std::vector<std::int64_t> modes;
  for (std::int64_t n = 0; n < static_cast<std::int64_t>(h.size()); ++n)
    if (rel_diff(h[static_cast<std::size_t>(n)], best) <= opts.tie_rel_tol)
      modes.push_back(n);
  return modes;
}

SummaryStats summarize(const OrderKParams& params) {
  SummaryStats s;
  s.params = params;
  std::tie(s.mean, s.variance) = mean_variance(params);
  s.median = median(params);
  s.modes = mode(params);
  s.cdf_at_median = cdf(params, s.median);
  s.multimodal = s.modes.size() >= 2;
  return s;
}

std::pair<double, double> empirical_moments(const PmfTable& table) {
  ScaledAccumulator mass, first;
  for (std::int64_t n = 0; n <= table.n_max; ++n) {
    mass.add(table.at(n));
    first.add(table.at(n) * static_cast<double>(n));
  }
  const double m1 = first.total().to_double();
  ScaledAccumulator second;
  for (std::int64_t n = 0; n <= table.n_max; ++n) {
    const double d = static_cast<double>(n) - m1;
    second.add(table.at(n) * (d * d));
  }
  return {m1, second.total().to_double()};
}

}  // namespace orderk
