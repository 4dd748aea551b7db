#include <doctest.h>

#include <cmath>

#include "goldentile/golden.hpp"
#include "goldentile/polynomial.hpp"

using namespace goldentile;

TEST_CASE("characteristic polynomials") {
  CHECK(charpoly({{1, 1}, {1, 0}}) == Polynomial{1, -1, -1});
  CHECK(charpoly({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == Polynomial{1, -10, 31, -30});
  // Companion matrix of x^3 - 4x^2 + 5x - 3 has it as characteristic polynomial.
  CHECK(charpoly({{4, -5, 3}, {1, 0, 0}, {0, 1, 0}}) == Polynomial{1, -4, 5, -3});
}

TEST_CASE("complex roots of a cubic with one real root") {
  const auto roots = complex_roots({1, -4, 5, -3});
  REQUIRE(roots.size() == 3);
  for (const auto& r : roots) CHECK(std::abs(poly_eval(Polynomial{1, -4, 5, -3}, r)) < 1e-12L);
  CHECK(static_cast<double>(roots[0].real()) == doctest::Approx(2.4655712319).epsilon(1e-9));
  CHECK(std::abs(roots[0].imag()) < 1e-15L);
  CHECK(roots[1].imag() > 0);
  CHECK(std::abs(roots[1] - std::conj(roots[2])) < 1e-15L);
}

TEST_CASE("largest real root") {
  CHECK(static_cast<double>(largest_real_root({1, -1, -1})) == doctest::Approx(kTau).epsilon(1e-15));
  CHECK(static_cast<double>(largest_real_root({1, -4, 5, -3})) == doctest::Approx(2.4655712319).epsilon(1e-10));
  const long double r = largest_real_root({1, -2, -1, 2, 1, -4});
  CHECK(std::abs(poly_eval(Polynomial{1, -2, -1, 2, 1, -4}, r)) < 1e-14L);
  CHECK(static_cast<double>(largest_real_root({1, 0, -2})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}
