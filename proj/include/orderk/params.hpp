#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace orderk {

// Parameter pair (k, lambda) of the Poisson distribution of order k, with the
// derived quantities kappa = k(k+1)/2 and mean = kappa*lambda.  Working in the
// mean scale (kappa*lambda) rather than lambda itself is what most of the
// solvers and verification grids do.
struct OrderKParams {
  int k = 1;
  double lambda = 1.0;
  std::int64_t kappa = 1;
  double mean = 1.0;

  OrderKParams() = default;

  OrderKParams(int k_, double lambda_) : k(k_), lambda(lambda_) {
    if (k < 1 || k > 10'000'000)
      throw std::invalid_argument("order k must be in [1, 1e7], got " + std::to_string(k));
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw std::invalid_argument("lambda must be positive and finite");
    kappa = static_cast<std::int64_t>(k) * (k + 1) / 2;
    mean = static_cast<double>(kappa) * lambda;
  }

  static OrderKParams from_mean(int k, double mean_value) {
    std::int64_t kap = static_cast<std::int64_t>(k) * (k + 1) / 2;
    if (k < 1) throw std::invalid_argument("order k must be >= 1");
    return OrderKParams(k, mean_value / static_cast<double>(kap));
  }

  double variance() const {
    return static_cast<double>(k) * (k + 1) * (2 * k + 1) * lambda / 6.0;
  }
};

}  // namespace orderk
