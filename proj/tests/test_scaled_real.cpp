#include <doctest.h>

#include <cmath>
#include <random>

#include "orderk/scaled_real.hpp"

using orderk::ScaledAccumulator;
using orderk::ScaledReal;

TEST_CASE("canonical form and round trips") {
  ScaledReal z;
  CHECK(z.is_zero());
  CHECK(z.mantissa() == 0.0);
  CHECK(z.exponent() == 0);
  CHECK(ScaledReal(0.0).is_zero());

  for (double v : {1.0, 0.5, 0.1, 3.25, 1e-300, 7e300, 123456.789}) {
    ScaledReal s(v);
    CHECK(s.mantissa() >= 0.5);
    CHECK(s.mantissa() < 1.0);
    CHECK(s.to_double() == v);
    ScaledReal neg(-v);
    CHECK(neg.to_double() == -v);
    CHECK(neg.negative());
  }
}

TEST_CASE("mantissa range is preserved by arithmetic") {
  std::mt19937_64 rng(12345);
  auto rnd = [&] {
    double m = 0.5 + 0.5 * (static_cast<double>(rng() >> 11) * 0x1p-53);
    auto e = static_cast<std::int64_t>(rng() % 4001) - 2000;
    return ScaledReal::from_parts(m, e);
  };
  for (int i = 0; i < 20000; ++i) {
    ScaledReal a = rnd(), b = rnd();
    for (ScaledReal r : {a + b, a * b, a / b, a * 0.37, a / 3.0}) {
      if (r.is_zero()) continue;
      CHECK(std::fabs(r.mantissa()) >= 0.5);
      CHECK(std::fabs(r.mantissa()) < 1.0);
    }
    // agreement with double arithmetic when everything is in range
    ScaledReal sa = ScaledReal(1.25), sb = ScaledReal(0.75);
    CHECK((sa + sb).to_double() == 2.0);
    CHECK((sa * sb).to_double() == 1.25 * 0.75);
  }
}

TEST_CASE("addition across huge exponent gaps keeps the larger term") {
  ScaledReal big = ScaledReal::from_parts(0.75, 5000);
  ScaledReal small = ScaledReal::from_parts(0.75, -5000);
  CHECK((big + small) == big);
  CHECK((small + big) == big);
}

TEST_CASE("ordering") {
  CHECK(ScaledReal::from_parts(0.9, -10) < ScaledReal::from_parts(0.5, -9));
  CHECK(ScaledReal::from_parts(0.5, 3) < ScaledReal::from_parts(0.6, 3));
  CHECK(ScaledReal() < ScaledReal(1e-300));
  CHECK(ScaledReal(-1.0) < ScaledReal());
  CHECK(ScaledReal(-2.0) < ScaledReal(-1.0));
}

TEST_CASE("rel_diff and ratio") {
  ScaledReal a(1.0), b(1.0 + 1e-13);
  CHECK(orderk::rel_diff(a, b) == doctest::Approx(1e-13).epsilon(1e-2));
  CHECK(orderk::rel_diff(a, a) == 0.0);
  CHECK(orderk::ratio(ScaledReal(3.0), ScaledReal(2.0)) == doctest::Approx(1.5));
  // far-apart magnitudes: fully different
  CHECK(orderk::rel_diff(ScaledReal::from_parts(0.5, -4000), ScaledReal::from_parts(0.5, 0)) ==
        doctest::Approx(1.0));
  CHECK(orderk::signed_rel_diff(ScaledReal(2.0), ScaledReal(3.0)) < 0.0);
  CHECK(orderk::signed_rel_diff(ScaledReal(3.0), ScaledReal(2.0)) > 0.0);
}

TEST_CASE("scaled_exp_neg matches exp in range and extends beyond it") {
  for (double t : {0.0, 1e-8, 0.5, 1.0, 10.0, 700.0}) {
    CHECK(orderk::scaled_exp_neg(t).to_double() == doctest::Approx(std::exp(-t)).epsilon(1e-15));
  }
  // ln of e^{-t} must equal -t far past the underflow point
  for (double t : {1000.0, 12345.678, 1e5, 5.05e5}) {
    CHECK(orderk::scaled_exp_neg(t).log() == doctest::Approx(-t).epsilon(1e-14));
  }
  // identity e^{-a} * e^{-b} = e^{-(a+b)}
  ScaledReal p = orderk::scaled_exp_neg(800.0) * orderk::scaled_exp_neg(450.0);
  CHECK(orderk::rel_diff(p, orderk::scaled_exp_neg(1250.0)) < 1e-13);
}

TEST_CASE("accumulator sums ascending and descending magnitudes exactly enough") {
  // sum_{j=0..N} 2^-j = 2 - 2^-N
  ScaledAccumulator up, down;
  const int n = 900;
  for (int j = 0; j <= n; ++j) up.add(ScaledReal::from_parts(0.5, 1 - j));
  for (int j = n; j >= 0; --j) down.add(ScaledReal::from_parts(0.5, 1 - j));
  double expect = 2.0 - std::ldexp(1.0, -n);
  CHECK(up.total().to_double() == doctest::Approx(expect).epsilon(1e-15));
  CHECK(down.total().to_double() == doctest::Approx(expect).epsilon(1e-15));

  // Kahan property: many equal tiny terms
  ScaledAccumulator acc;
  for (int i = 0; i < 1000000; ++i) acc.add(ScaledReal(0.1));
  CHECK(acc.total().to_double() == doctest::Approx(100000.0).epsilon(1e-14));
}
