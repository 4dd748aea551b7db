#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "goldentile/golden.hpp"

using namespace goldentile;

TEST_CASE("multiplication uses tau^2 = 1 + tau") {
  CHECK(mul({1, 1}, {1, 1}) == GoldenNumber{2, 3});
  CHECK(mul(GoldenNumber::tau(), GoldenNumber::tau()) == GoldenNumber{1, 1});
  CHECK(tau_power(4) == GoldenNumber{2, 3});
  CHECK(tau_power(5) == GoldenNumber{3, 5});
  CHECK(tau_power(3) * GoldenNumber::sigma() * GoldenNumber::sigma() * GoldenNumber::sigma() == GoldenNumber{-1});
  CHECK_THROWS_AS(tau_power(-1), std::invalid_argument);
}

TEST_CASE("sign examples") {
  CHECK(sign({1, -1}) == -1);
  CHECK(sign({0, 0}) == 0);
  CHECK(sign({-2, 2}) == 1);
  CHECK(sign({-1597, 987}) == -1);  // F17 - F16 tau: tiny negative number
  CHECK(sign({1597, -987}) == 1);
}

TEST_CASE("star of the Fourier module") {
  CHECK(star_value(FourierIndex(ModuleCoord{0, 0}))[0] == 0.0);
  CHECK(star_value(FourierIndex(ModuleCoord{1, 0}))[0] == doctest::Approx(-0.4472136).epsilon(1e-7));
  CHECK(star_value(FourierIndex(ModuleCoord{0, 1}))[0] == doctest::Approx(0.2763932).epsilon(1e-7));
  const ModuleCoord k{3, -5};
  CHECK(k.value() == doctest::Approx((3 - 5 * kTau) / kSqrt5));
}

TEST_CASE("ring axioms and the star homomorphism on random inputs") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-1000, 1000);
  for (int i = 0; i < 2000; ++i) {
    const GoldenNumber x{d(rng), d(rng)}, y{d(rng), d(rng)}, z{d(rng), d(rng)};
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * y == y * x);
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y).star() == x.star() * y.star());
    CHECK((x + y).star() == x.star() + y.star());
    CHECK(x.star().star() == x);
    CHECK(x.star().value() == doctest::Approx(x.star_value()).epsilon(1e-12));
  }
}

TEST_CASE("float conversion within 4 ulp") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  for (int i = 0; i < 5000; ++i) {
    const GoldenNumber x{d(rng), d(rng)};
    const long double exact = static_cast<long double>(x.rational()) +
                              static_cast<long double>(x.irrational()) * 1.6180339887498948482045868343656L;
    const double v = x.value();
    const double ulp = std::nextafter(std::abs(v), INFINITY) - std::abs(v);
    CHECK(std::abs(static_cast<long double>(v) - exact) <= 4 * ulp + 1e-300);
  }
}

TEST_CASE("sign agrees with floating point away from zero") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::int64_t> d(-1000000, 1000000);
  for (int i = 0; i < 20000; ++i) {
    const GoldenNumber x{d(rng), d(rng)};
    const double v = x.value();
    if (std::abs(v) > 1e-6) CHECK(x.sign() == (v > 0 ? 1 : -1));
  }
  // Continued-fraction convergents make the hardest cases.
  std::int64_t f0 = 0, f1 = 1;
  for (int n = 0; n < 60; ++n) {
    const GoldenNumber x{f1, -f0};  // F(n+1) - F(n) tau, alternating sign
    CHECK(x.sign() == ((n % 2 == 0) ? 1 : -1));
    const auto f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
}

TEST_CASE("overflow is detected") {
  const GoldenNumber big{std::numeric_limits<std::int64_t>::max() / 2, 0};
  CHECK_THROWS_AS(big * GoldenNumber{3}, std::overflow_error);
  CHECK_THROWS_AS(big + big + big, std::overflow_error);
}

TEST_CASE("vectors and ordering") {
  const GoldenVec a{GoldenNumber{1}, GoldenNumber::tau()};
  const GoldenVec b = a.scaled(GoldenNumber::tau());
  CHECK(b[0] == GoldenNumber::tau());
  CHECK(b[1] == GoldenNumber{1, 1});
  CHECK(a.star()[1] == GoldenNumber::sigma());
  CHECK((b - a) + a == b);
  CHECK(GoldenNumber{1, -1} < GoldenNumber{0});
  CHECK(GoldenNumber::tau() > GoldenNumber{1});
  CHECK(GoldenNumber{2, 3}.to_string() == "2+3*tau");
}
