#include <doctest.h>

#include <cmath>
#include <vector>

#include "orderk/errors.hpp"
#include "orderk/pmf.hpp"

using namespace orderk;

namespace {
double rel(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b)); }
}  // namespace

TEST_CASE("k=1 is the standard Poisson distribution") {
  OrderKParams p(1, 1.0);
  PmfTable t = pmf_adelson(p, 5);
  const double e1 = std::exp(-1.0);
  CHECK(rel(t.at(0).to_double(), e1) < 1e-15);
  CHECK(rel(t.at(1).to_double(), e1) < 1e-15);
  CHECK(rel(t.at(2).to_double(), e1 / 2) < 1e-15);
  CHECK(rel(t.at(3).to_double(), e1 / 6) < 1e-15);
  CHECK(rel(t.at(5).to_double(), e1 / 120) < 1e-14);

  // mass at 3 for lambda = 2
  PmfTable t2 = pmf_gps(OrderKParams(1, 2.0), 3);
  CHECK(rel(t2.at(3).to_double(), std::exp(-2.0) * 8.0 / 6.0) < 1e-14);
}

TEST_CASE("k=2 masses match the tuple sums") {
  // tuple sums for k=2: h(2) = l + l^2/2, h(3) = l^2 + l^3/6,
  // h(4) = l^2/2 + l^3/2 + l^4/24, h(6) = l^3/6 + l^4/4 + l^5/24 + l^6/720
  for (double l : {0.3, 1.0, 2.0}) {
    PmfTable t = pmf_kwon_philippou(OrderKParams(2, l), 6);
    CHECK(rel(t.h_at(1).to_double(), l) < 1e-13);
    CHECK(rel(t.h_at(2).to_double(), l + l * l / 2) < 1e-13);
    CHECK(rel(t.h_at(3).to_double(), l * l + l * l * l / 6) < 1e-13);
    CHECK(rel(t.h_at(4).to_double(), l * l / 2 + l * l * l / 2 + std::pow(l, 4) / 24) < 1e-13);
    CHECK(rel(t.h_at(6).to_double(),
              std::pow(l, 3) / 6 + std::pow(l, 4) / 4 + std::pow(l, 5) / 24 +
                  std::pow(l, 6) / 720) < 1e-13);
  }
  PmfTable t = pmf_adelson(OrderKParams(2, 1.0), 2);
  CHECK(rel(t.at(2).to_double(), 1.5 * std::exp(-2.0)) < 1e-14);
  CHECK(rel(pmf_gps(OrderKParams(2, 1.0), 6).at(6).to_double(),
            (331.0 / 720.0) * std::exp(-2.0)) < 1e-13);
}

TEST_CASE("h(0) = 1 for every engine and p_0 = e^{-k lambda}") {
  OrderKParams p(5, 1.0);
  for (Engine e : {Engine::Adelson, Engine::Gps, Engine::KwonPhilippou,
                   Engine::KostadinovaMinkova, Engine::Oracle}) {
    PmfTable t = pmf(p, 3, e);
    CHECK(t.h_at(0).to_double() == 1.0);
    CHECK(rel(t.at(0).to_double(), std::exp(-5.0)) < 1e-14);
  }
  // deep underflow: p_0 = e^{-1000}
  PmfTable deep = pmf_gps(OrderKParams(10, 100.0), 0);
  CHECK(deep.at(0).log() == doctest::Approx(-1000.0).epsilon(1e-13));
  CHECK(deep.at(0).to_double() == 0.0);  // below the double range by construction
}

TEST_CASE("oracle tuple sets and budget") {
  std::vector<std::vector<std::int64_t>> got;
  enumerate_compositions(2, 4, [&](const std::vector<std::int64_t>& t) { got.push_back(t); });
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::vector<std::int64_t>>{{0, 2}, {2, 1}, {4, 0}});

  CHECK_THROWS_AS(pmf_oracle(OrderKParams(2, 1.0), 61), BudgetError);
  CHECK_THROWS_AS(pmf_oracle(OrderKParams(7, 1.0), 10), BudgetError);
  CHECK_NOTHROW(pmf_oracle(OrderKParams(6, 1.0), 60));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(OrderKParams(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(OrderKParams(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(OrderKParams(3, -2.0), std::invalid_argument);
  CHECK_THROWS_AS(pmf_gps(OrderKParams(2, 1.0), -1), std::invalid_argument);
}

TEST_CASE("engines agree elementwise with each other and the oracle") {
  for (int k : {1, 2, 3, 4, 6}) {
    for (double l : {0.1, 1.0, 10.0}) {
      OrderKParams p(k, l);
      PmfTable ad = pmf_adelson(p, 300);
      PmfTable gp = pmf_gps(p, 300);
      PmfTable kp = pmf_kwon_philippou(p, 300);
      PmfTable km = pmf_km(p, 300);
      CHECK(max_rel_deviation(ad, gp) < 1e-12);
      CHECK(max_rel_deviation(ad, kp) < 1e-12);
      CHECK(max_rel_deviation(ad, km) < 1e-12);
      for (std::int64_t n = 0; n <= 300; ++n) {
        CHECK_FALSE(ad.at(n).negative());
        CHECK_FALSE(km.at(n).negative());
      }
    }
  }
  for (int k : {1, 2, 3, 4}) {
    for (double l : {0.3, 1.0, 2.0}) {
      OrderKParams p(k, l);
      CHECK(max_rel_deviation(pmf_gps(p, 20), pmf_oracle(p, 20)) < 1e-12);
    }
  }
  OrderKParams p35(3, 0.5);
  CHECK(max_rel_deviation(pmf_adelson(p35, 40), pmf_oracle(p35, 40)) < 1e-12);
  OrderKParams p47(4, 0.7);
  CHECK(max_rel_deviation(pmf_oracle(p47, 25), pmf_km(p47, 25)) < 1e-12);
}

TEST_CASE("four-term engine keeps the deep tail exact where floating evaluation cannot") {
  // At k=3, lambda=2 the bulk sits near n = 12.  The floating four-term
  // recurrence carries its bulk rounding residue into the far tail unattenuated,
  // while the integer evaluation stays elementwise consistent with the stable
  // k-term recurrences.
  OrderKParams p(3, 2.0);
  const std::int64_t n_max = 400;
  PmfTable exact = pmf_km(p, n_max);
  PmfTable gps = pmf_gps(p, n_max);
  CHECK(max_rel_deviation(exact, gps) < 1e-12);

  std::vector<ScaledReal> fl = detail::km_h_table_floating(p, n_max);
  double bulk = 0.0;
  for (std::int64_t n = 0; n <= 40; ++n) bulk = std::max(bulk, rel_diff(fl[n], exact.h_at(n)));
  CHECK(bulk < 1e-11);
  CHECK(rel_diff(fl[400], exact.h_at(400)) > 1e-3);
}

TEST_CASE("deep-underflow table mass reaches 1") {
  PmfTable t = pmf_km(OrderKParams(10, 100.0), 8000);
  CHECK(t.total_mass().to_double() >= 1.0 - 1e-10);
  CHECK(t.total_mass().to_double() <= 1.0 + 1e-10);
}

TEST_CASE("engines agree on randomized parameters") {
  std::mt19937_64 rng(90125);
  for (int trial = 0; trial < 30; ++trial) {
    int k = 1 + static_cast<int>(rng() % 12);
    double u = static_cast<double>(rng() >> 11) * 0x1p-53;  // in [0,1)
    double lambda = std::exp(-3.0 + 6.0 * u);
    OrderKParams p(k, lambda);
    CAPTURE(k);
    CAPTURE(lambda);
    PmfTable gp = pmf_gps(p, 200);
    CHECK(max_rel_deviation(pmf_adelson(p, 200), gp) < 1e-12);
    CHECK(max_rel_deviation(pmf_km(p, 200), gp) < 1e-12);
    CHECK(gp.total_mass().to_double() <= 1.0 + 1e-10);
  }
}

TEST_CASE("tables are deterministic") {
  PmfTable a = pmf_gps(OrderKParams(4, 1.7), 200);
  PmfTable b = pmf_gps(OrderKParams(4, 1.7), 200);
  for (std::int64_t n = 0; n <= 200; ++n) CHECK(a.at(n) == b.at(n));
}

TEST_CASE("engine names round-trip") {
  for (Engine e : {Engine::Adelson, Engine::Gps, Engine::KwonPhilippou,
                   Engine::KostadinovaMinkova, Engine::Oracle})
    CHECK(parse_engine(engine_name(e)) == e);
  CHECK_FALSE(parse_engine("nope").has_value());
}
