#include "orderk/pmf.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orderk/errors.hpp"

namespace orderk {

std::string engine_name(Engine e) {
  switch (e) {
    case Engine::Adelson: return "adelson";
    case Engine::Gps: return "gps";
    case Engine::KwonPhilippou: return "kp";
    case Engine::KostadinovaMinkova: return "km";
    case Engine::Oracle: return "oracle";
  }
  return "?";
}

std::optional<Engine> parse_engine(const std::string& name) {
  if (name == "adelson") return Engine::Adelson;
  if (name == "gps") return Engine::Gps;
  if (name == "kp") return Engine::KwonPhilippou;
  if (name == "km") return Engine::KostadinovaMinkova;
  if (name == "oracle") return Engine::Oracle;
  return std::nullopt;
}

ScaledReal PmfTable::total_mass() const {
  ScaledAccumulator acc;
  for (const auto& v : values) acc.add(v);
  return acc.total();
}

namespace {

void check_inputs(const OrderKParams& params, std::int64_t n_max) {
  if (params.k < 1) throw std::invalid_argument("order k must be >= 1");
  if (!(params.lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (n_max > 100'000'000) throw std::invalid_argument("n_max too large (limit 1e8)");
}

// Attaches the common factor e^{-k lambda} to an h-table.
PmfTable finish_table(const OrderKParams& params, Engine engine,
                      std::vector<ScaledReal> h) {
  ScaledReal scale = scaled_exp_neg(static_cast<double>(params.k) * params.lambda);
  for (auto& v : h) v *= scale;
  PmfTable t;
  t.params = params;
  t.engine = engine;
  t.n_max = static_cast<std::int64_t>(h.size()) - 1;
  t.values = std::move(h);
  return t;
}

}  // namespace

// R_n = (lambda/n) * sum_{j=1..k} j R_{n-j}, zero for negative indices.
PmfTable pmf_adelson(const OrderKParams& params, std::int64_t n_max) {
  check_inputs(params, n_max);
  const int k = params.k;
  const double lambda = params.lambda;
  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = ScaledReal(1.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    ScaledAccumulator acc;
    for (int j = 1; j <= k; ++j) {
      if (n - j < 0) break;
      acc.add(h[static_cast<std::size_t>(n - j)] * static_cast<double>(j));
    }
    h[static_cast<std::size_t>(n)] = acc.total() * (lambda / static_cast<double>(n));
  }
  return finish_table(params, Engine::Adelson, std::move(h));
}

// n P_n = sum_{j=1..k} (j lambda) P_{n-j}; coefficients precomputed, summed from
// the oldest term up.
PmfTable pmf_gps(const OrderKParams& params, std::int64_t n_max) {
  check_inputs(params, n_max);
  const int k = params.k;
  std::vector<double> coef(static_cast<std::size_t>(k) + 1);
  for (int j = 1; j <= k; ++j) coef[static_cast<std::size_t>(j)] = static_cast<double>(j) * params.lambda;
  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = ScaledReal(1.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    ScaledAccumulator acc;
    for (int j = static_cast<int>(std::min<std::int64_t>(k, n)); j >= 1; --j)
      acc.add(h[static_cast<std::size_t>(n - j)] * coef[static_cast<std::size_t>(j)]);
    h[static_cast<std::size_t>(n)] = acc.total() / static_cast<double>(n);
  }
  return finish_table(params, Engine::Gps, std::move(h));
}

// n h(n) = sum_{j=1..n} j lambda h(n-j) for n <= k, sum_{j=1..k} otherwise,
// with h(0) = 1.
PmfTable pmf_kwon_philippou(const OrderKParams& params, std::int64_t n_max) {
  check_inputs(params, n_max);
  const int k = params.k;
  const double lambda = params.lambda;
  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = ScaledReal(1.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const int jmax = n <= k ? static_cast<int>(n) : k;
    ScaledAccumulator acc;
    for (int j = 1; j <= jmax; ++j)
      acc.add(h[static_cast<std::size_t>(n - j)] * (static_cast<double>(j) * lambda));
    h[static_cast<std::size_t>(n)] = acc.total() / static_cast<double>(n);
  }
  return finish_table(params, Engine::KwonPhilippou, std::move(h));
}

namespace {

// Minimal RAII wrapper over mpz_t.
struct Mpz {
  mpz_t z;
  Mpz() { mpz_init(z); }
  explicit Mpz(unsigned long v) { mpz_init_set_ui(z, v); }
  ~Mpz() { mpz_clear(z); }
  Mpz(const Mpz&) = delete;
  Mpz& operator=(const Mpz&) = delete;
};

ScaledReal scaled_from_mpz(const mpz_t z) {
  long e = 0;
  double m = mpz_get_d_2exp(&e, z);
  if (m == 0.0) return ScaledReal();
  return ScaledReal::from_parts(m, static_cast<std::int64_t>(e));
}

}  // namespace

// Four-term recurrence
//   p_n = (2 + (l-2)/n) p_{n-1} - (1 - 2/n) p_{n-2} - ((k+1) l / n) p_{n-k-1}
//         + (k l / n) p_{n-k-2}
// evaluated in h-space over exact integers.  With lambda = a 2^e read off the
// double bit pattern and S = max(0, -e), the quantity G_n = h_n n! 2^{Sn}
// satisfies the integer recurrence
//   G_n = ((2n-2) 2^S + a 2^{e+S}) G_{n-1} - (n-1)(n-2) 2^{2S} G_{n-2}
//         - (k+1) a (n-1)...(n-k) 2^{e+S(k+1)} G_{n-k-1}
//         + k a (n-1)...(n-k-1) 2^{e+S(k+2)} G_{n-k-2},
// so every subtraction is exact and the single rounding happens on output.
PmfTable pmf_km(const OrderKParams& params, std::int64_t n_max) {
  check_inputs(params, n_max);
  const int k = params.k;

  // lambda = a * 2^e with the trailing zero bits of the significand stripped
  int exp2 = 0;
  double frac = std::frexp(params.lambda, &exp2);
  std::int64_t a = static_cast<std::int64_t>(std::ldexp(frac, 53));
  std::int64_t e = static_cast<std::int64_t>(exp2) - 53;
  while (a % 2 == 0) {
    a /= 2;
    ++e;
  }
  const std::int64_t S = std::max<std::int64_t>(0, -e);

  Mpz a_shift;  // a * 2^{e+S}
  mpz_set_ui(a_shift.z, static_cast<unsigned long>(a));
  mpz_mul_2exp(a_shift.z, a_shift.z, static_cast<mp_bitcnt_t>(e + S));
  Mpz base3;  // (k+1) a 2^{e+S(k+1)}
  mpz_mul_ui(base3.z, a_shift.z, static_cast<unsigned long>(k + 1));
  mpz_mul_2exp(base3.z, base3.z, static_cast<mp_bitcnt_t>(S * k));
  Mpz base4;  // k a 2^{e+S(k+2)}
  mpz_mul_ui(base4.z, a_shift.z, static_cast<unsigned long>(k));
  mpz_mul_2exp(base4.z, base4.z, static_cast<mp_bitcnt_t>(S * (k + 1)));

  const std::size_t ring = static_cast<std::size_t>(k) + 3;
  std::vector<Mpz> g(ring);
  mpz_set_ui(g[0].z, 1);  // G_0 = 1

  Mpz fact;  // n!
  mpz_set_ui(fact.z, 1);
  Mpz ff1;  // (n-1)...(n-k), maintained incrementally from n = k+1
  Mpz ff2;  // (n-1)...(n-k-1), from n = k+2
  Mpz an, tmp, acc;

  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = ScaledReal(1.0);

  for (std::int64_t n = 1; n <= n_max; ++n) {
    // A_n G_{n-1}
    mpz_set_ui(an.z, static_cast<unsigned long>(2 * n - 2));
    mpz_mul_2exp(an.z, an.z, static_cast<mp_bitcnt_t>(S));
    mpz_add(an.z, an.z, a_shift.z);
    mpz_mul(acc.z, an.z, g[static_cast<std::size_t>((n - 1) % ring)].z);
    // - (n-1)(n-2) 2^{2S} G_{n-2}
    if (n >= 2 + 1) {  // factor is zero at n = 2
      mpz_mul_ui(tmp.z, g[static_cast<std::size_t>((n - 2) % ring)].z,
                 static_cast<unsigned long>((n - 1) * (n - 2)));
      mpz_mul_2exp(tmp.z, tmp.z, static_cast<mp_bitcnt_t>(2 * S));
      mpz_sub(acc.z, acc.z, tmp.z);
    }
    // - (k+1) a ff1 2^{..} G_{n-k-1}
    if (n == k + 1) {
      mpz_set_ui(ff1.z, 1);
      for (int j = 1; j <= k; ++j) mpz_mul_ui(ff1.z, ff1.z, static_cast<unsigned long>(j));
    } else if (n > k + 1) {
      mpz_mul_ui(ff1.z, ff1.z, static_cast<unsigned long>(n - 1));
      mpz_divexact_ui(ff1.z, ff1.z, static_cast<unsigned long>(n - 1 - k));
    }
    if (n >= k + 1) {
      mpz_mul(tmp.z, base3.z, ff1.z);
      mpz_mul(tmp.z, tmp.z, g[static_cast<std::size_t>((n - k - 1) % ring)].z);
      mpz_sub(acc.z, acc.z, tmp.z);
    }
    // + k a ff2 2^{..} G_{n-k-2}
    if (n == k + 2) {
      mpz_set_ui(ff2.z, 1);
      for (int j = 1; j <= k + 1; ++j) mpz_mul_ui(ff2.z, ff2.z, static_cast<unsigned long>(j));
    } else if (n > k + 2) {
      mpz_mul_ui(ff2.z, ff2.z, static_cast<unsigned long>(n - 1));
      mpz_divexact_ui(ff2.z, ff2.z, static_cast<unsigned long>(n - 2 - k));
    }
    if (n >= k + 2) {
      mpz_mul(tmp.z, base4.z, ff2.z);
      mpz_mul(tmp.z, tmp.z, g[static_cast<std::size_t>((n - k - 2) % ring)].z);
      mpz_add(acc.z, acc.z, tmp.z);
    }
    mpz_set(g[static_cast<std::size_t>(n % ring)].z, acc.z);

    mpz_mul_ui(fact.z, fact.z, static_cast<unsigned long>(n));
    ScaledReal hn = scaled_from_mpz(acc.z) / scaled_from_mpz(fact.z);
    h[static_cast<std::size_t>(n)] =
        ScaledReal::from_parts(hn.mantissa(), hn.exponent() - S * n);
  }
  return finish_table(params, Engine::KostadinovaMinkova, std::move(h));
}

namespace detail {

std::vector<ScaledReal> km_h_table_floating(const OrderKParams& params, std::int64_t n_max) {
  check_inputs(params, n_max);
  const int k = params.k;
  const double lambda = params.lambda;
  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  h[0] = ScaledReal(1.0);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    ScaledReal pos = h[static_cast<std::size_t>(n - 1)] * (2.0 + (lambda - 2.0) / dn);
    ScaledReal neg;
    if (n >= 2) neg = h[static_cast<std::size_t>(n - 2)] * (1.0 - 2.0 / dn);
    if (n >= k + 1)
      neg += h[static_cast<std::size_t>(n - k - 1)] * ((k + 1) * lambda / dn);
    if (n >= k + 2)
      pos += h[static_cast<std::size_t>(n - k - 2)] * (k * lambda / dn);
    h[static_cast<std::size_t>(n)] = pos - neg;
  }
  return h;
}

}  // namespace detail

void enumerate_compositions(int k, std::int64_t n,
                            const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(k), 0);
  // chooses n_part for parts k, k-1, ..., 2; part 1 takes the remainder
  auto rec = [&](auto&& self, int part, std::int64_t rem) -> void {
    if (part == 1) {
      tuple[0] = rem;
      fn(tuple);
      return;
    }
    for (std::int64_t c = rem / part; c >= 0; --c) {
      tuple[static_cast<std::size_t>(part - 1)] = c;
      self(self, part - 1, rem - c * part);
    }
  };
  rec(rec, k, n);
}

PmfTable pmf_oracle(const OrderKParams& params, std::int64_t n_max, const OracleBudget& budget) {
  check_inputs(params, n_max);
  if (n_max > budget.max_n)
    throw BudgetError("oracle budget exceeded: n_max = " + std::to_string(n_max) +
                      " > " + std::to_string(budget.max_n));
  if (params.k > budget.max_k)
    throw BudgetError("oracle budget exceeded: k = " + std::to_string(params.k) +
                      " > " + std::to_string(budget.max_k));

  std::vector<double> pow_lambda(static_cast<std::size_t>(n_max) + 1, 1.0);
  for (std::size_t j = 1; j < pow_lambda.size(); ++j) pow_lambda[j] = pow_lambda[j - 1] * params.lambda;
  std::vector<double> factorial(static_cast<std::size_t>(n_max) + 1, 1.0);
  for (std::size_t j = 1; j < factorial.size(); ++j) factorial[j] = factorial[j - 1] * static_cast<double>(j);

  std::vector<ScaledReal> h(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    double sum = 0.0, comp = 0.0;
    enumerate_compositions(params.k, n, [&](const std::vector<std::int64_t>& tuple) {
      std::int64_t count = 0;
      double denom = 1.0;
      for (std::int64_t c : tuple) {
        count += c;
        denom *= factorial[static_cast<std::size_t>(c)];
      }
      double term = pow_lambda[static_cast<std::size_t>(count)] / denom;
      double t = sum + term;  // Neumaier
      comp += std::fabs(sum) >= term ? (sum - t) + term : (term - t) + sum;
      sum = t;
    });
    h[static_cast<std::size_t>(n)] = ScaledReal(sum + comp);
  }
  return finish_table(params, Engine::Oracle, std::move(h));
}

PmfTable pmf(const OrderKParams& params, std::int64_t n_max, Engine engine) {
  switch (engine) {
    case Engine::Adelson: return pmf_adelson(params, n_max);
    case Engine::Gps: return pmf_gps(params, n_max);
    case Engine::KwonPhilippou: return pmf_kwon_philippou(params, n_max);
    case Engine::KostadinovaMinkova: return pmf_km(params, n_max);
    case Engine::Oracle: return pmf_oracle(params, n_max);
  }
  throw std::invalid_argument("unknown engine");
}

double max_rel_deviation(const PmfTable& a, const PmfTable& b) {
  std::int64_t n = std::min(a.n_max, b.n_max);
  double worst = 0.0;
  for (std::int64_t i = 0; i <= n; ++i)
    worst = std::max(worst, rel_diff(a.at(i), b.at(i)));
  return worst;
}

}  // namespace orderk
