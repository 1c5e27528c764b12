#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orderk/params.hpp"
#include "orderk/scaled_real.hpp"

namespace orderk {

enum class Engine { Adelson, Gps, KwonPhilippou, KostadinovaMinkova, Oracle };

std::string engine_name(Engine e);
std::optional<Engine> parse_engine(const std::string& name);

// Probability masses p_0..p_{n_max} for fixed (k, lambda), together with the
// engine that produced them.  Values are ScaledReal: the tables stay meaningful
// for means deep in the e^{-1000} regime.
struct PmfTable {
  OrderKParams params;
  Engine engine = Engine::Gps;
  std::int64_t n_max = 0;
  std::vector<ScaledReal> values;

  const ScaledReal& at(std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }

  // h(n) = e^{k lambda} p_n = p_n / p_0, the polynomial normalisation in which
  // the recurrences run.
  ScaledReal h_at(std::int64_t n) const { return at(n) / at(0); }

  ScaledReal total_mass() const;
};

// The three k-term recurrences.  Algebraically identical; kept as separately
// coded paths (different summation orders and bookkeeping) for cross-validation.
PmfTable pmf_adelson(const OrderKParams& params, std::int64_t n_max);
PmfTable pmf_gps(const OrderKParams& params, std::int64_t n_max);
PmfTable pmf_kwon_philippou(const OrderKParams& params, std::int64_t n_max);

// Four-term recurrence, per-step cost independent of k.  Run over exact
// integers (lambda taken as its exact binary rational) and rounded once on
// output: the recurrence subtracts terms and in floating point the rounding
// residue of the bulk persists into the tail, where it dwarfs the true masses.
PmfTable pmf_km(const OrderKParams& params, std::int64_t n_max);

struct OracleBudget {
  std::int64_t max_n = 60;
  int max_k = 6;
};

// Brute-force oracle: enumerates tuples (n_1..n_k) with n_1 + 2 n_2 + ... + k n_k = n
// and sums lambda^{n_1+...+n_k} / (n_1! ... n_k!) with compensated addition.
// Throws BudgetError beyond the configured instance size.
PmfTable pmf_oracle(const OrderKParams& params, std::int64_t n_max,
                    const OracleBudget& budget = {});

PmfTable pmf(const OrderKParams& params, std::int64_t n_max, Engine engine);

// Calls fn once per tuple (n_1..n_k) with n_1 + 2 n_2 + ... + k n_k = n.
void enumerate_compositions(int k, std::int64_t n,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn);

// Largest elementwise rel_diff between two tables over shared indices.
double max_rel_deviation(const PmfTable& a, const PmfTable& b);

namespace detail {

// h(0..n_max) by the four-term recurrence in plain ScaledReal arithmetic.
// Accurate near and before the running peak; the deep tail is contaminated by
// the persistent rounding residue described above.  Used by the mode scans,
// which only ever compare values near the maximum.
std::vector<ScaledReal> km_h_table_floating(const OrderKParams& params, std::int64_t n_max);

}  // namespace detail

}  // namespace orderk
