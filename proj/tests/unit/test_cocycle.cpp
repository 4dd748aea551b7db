#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "goldentile/cocycle.hpp"
#include "goldentile/diffraction.hpp"

using namespace goldentile;

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.n, m.n);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) e(i, j) = m(i, j);
  return e;
}

double max_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

CMatrix int_matrix(const IntMatrix& m) {
  CMatrix c(static_cast<int>(m.size()));
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) c(i, j) = static_cast<double>(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return c;
}

RealVec random_y(std::mt19937_64& rng, int dim, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {u(rng), dim == 2 ? u(rng) : 0.0};
}

}  // namespace

TEST_CASE("Fourier matrix of the Fibonacci rule") {
  const auto fib = builtin_rule("fibonacci1d");
  const CMatrix b0 = fourier_matrix(fib, {0.0, 0.0});
  CHECK(max_diff(b0, int_matrix({{1, 1}, {1, 0}})) == 0.0);
  const double y = 0.37;
  const CMatrix b = fourier_matrix(fib, {y, 0.0});
  CHECK(std::abs(b(0, 0) - 1.0) < 1e-15);
  CHECK(std::abs(b(0, 1) - 1.0) < 1e-15);
  CHECK(std::abs(b(1, 0) - std::polar(1.0, 2 * kPi * kSigma * y)) < 1e-15);
  CHECK(std::abs(b(1, 1)) == 0.0);
}

TEST_CASE("Fourier matrix of the square rule") {
  const auto sq = builtin_rule("square00x");
  const RealVec y{0.3, -1.1};
  const CMatrix b = fourier_matrix(sq, y);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(b(3, j) - 1.0) < 1e-15);
  CHECK(std::abs(b(0, 3) - std::polar(1.0, 2 * kPi * kSigma * (y[0] + y[1]))) < 1e-14);
}

TEST_CASE("cocycle at the origin is the matrix power, exactly") {
  for (const char* sel : {"fib1d", "square00x", "twisted4", "dpv:0,1,6"}) {
    const auto r = rule_from_selector(sel);
    const auto m = int_matrix(substitution_matrix(r));
    CMatrix p = CMatrix::identity(m.n);
    for (int n = 1; n <= 12; ++n) {
      p = p * m;
      CHECK(max_diff(cocycle_product(r, {0.0, 0.0}, n), p) == 0.0);
    }
  }
  CHECK(max_diff(cocycle_product(builtin_rule("fib1d"), {0.0, 0.0}, 3), int_matrix({{3, 2}, {2, 1}})) == 0.0);
}

TEST_CASE("cocycle splitting identity") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> nd(1, 6);
  for (const char* sel : {"fib1d", "square00x", "twisted4", "dpv:1,1,2"}) {
    const auto r = rule_from_selector(sel);
    for (int t = 0; t < 100; ++t) {
      const RealVec y = random_y(rng, r.dim, 10.0);
      const int n = nd(rng), m = nd(rng);
      const double s = std::pow(kSigma, m);
      const CMatrix lhs = cocycle_product(r, y, n + m);
      const CMatrix rhs = cocycle_product(r, y, m) * cocycle_product(r, {s * y[0], s * y[1]}, n);
      // Entries grow like lambda^(n+m); compare relative to the largest.
      CHECK(max_diff(lhs, rhs) <= 1e-12 * std::max(1.0, lhs.max_abs()));
    }
  }
}

TEST_CASE("limit C: eigen relation and rank one") {
  std::mt19937_64 rng(5);
  for (const char* sel : {"fib1d", "square00x", "twisted4", "dpv:0,0,6", "dpv:1,0,5"}) {
    const auto r = rule_from_selector(sel);
    const CocycleEvaluator ev(r);
    const auto m = int_matrix(substitution_matrix(r));
    for (int t = 0; t < 100; ++t) {
      const RealVec y = random_y(rng, r.dim, 20.0);
      CMatrix c = ev.limit_matrix(y);
      CMatrix lc = c;
      lc *= ev.pf().lambda;
      CHECK((lc - c * m).norm_inf() < 1e-8);
      const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(c));
      const auto sv = svd.singularValues();
      if (sv(0) > 1e-12) CHECK(sv(1) < 1e-8 * sv(0));
    }
  }
}

TEST_CASE("limit at the origin is the right PF vector") {
  for (const char* sel : {"fib1d", "square00x", "twisted4", "dpv:0,1,1"}) {
    const CocycleEvaluator ev(rule_from_selector(sel));
    const auto lim = ev.limit_C({0.0, 0.0});
    for (int i = 0; i < ev.size(); ++i) CHECK(std::abs(lim.c[static_cast<std::size_t>(i)] - ev.pf().v[static_cast<std::size_t>(i)]) < 1e-12);
  }
}

TEST_CASE("1D limit matches the interval transforms") {
  const CocycleEvaluator ev(builtin_rule("fibonacci1d"));
  auto ft = [](double y, double lo, double hi) {
    return (std::polar(1.0, 2 * kPi * y * hi) - std::polar(1.0, 2 * kPi * y * lo)) / (2.0 * kPi * cplx(0, 1) * y);
  };
  // c = h / tau where h is the transform of the window indicator.
  double worst = 0;
  for (int i = 1; i <= 400; ++i) {
    const double y = -20.0 + 40.0 * i / 401.0;
    const auto c = ev.limit_C({y, 0.0}).c;
    worst = std::max(worst, std::abs(kTau * c[0] - ft(y, kTau - 2, kTau - 1)));
    worst = std::max(worst, std::abs(kTau * c[1] - ft(y, -1.0, kTau - 2)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("product rule factorizes") {
  const CocycleEvaluator fib(builtin_rule("fibonacci1d"));
  const CocycleEvaluator sq(builtin_rule("square00x"));
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const RealVec y = random_y(rng, 2, 8.0);
    const auto c1 = fib.limit_C({y[0], 0.0}).c;
    const auto c2 = fib.limit_C({y[1], 0.0}).c;
    const auto c = sq.limit_C(y).c;
    // Tile id (1 - ix) + 2 (1 - iy) with ix, iy = 0 for the long side.
    for (int ix = 0; ix < 2; ++ix)
      for (int iy = 0; iy < 2; ++iy) {
        const auto id = static_cast<std::size_t>((1 - ix) + 2 * (1 - iy));
        CHECK(std::abs(c[id] - c1[static_cast<std::size_t>(ix)] * c2[static_cast<std::size_t>(iy)]) < 1e-9);
      }
  }
}

TEST_CASE("amplitude examples") {
  const auto fib = builtin_rule("fibonacci1d");
  const CocycleEvaluator ev(fib);
  const auto a0 = ev.fb_amplitude(FourierIndex::zero(1));
  CHECK(std::abs(a0[0] + a0[1] - kTau / kSqrt5) < 1e-12);
  const auto a1 = ev.fb_amplitude(FourierIndex(ModuleCoord{1, 0}));
  CHECK(std::abs(a1[0] + a1[1]) == doctest::Approx(0.2430).epsilon(1e-3));
  CHECK(std::abs(a1[0] + a1[1] - sinc_amplitude_1d(FourierIndex(ModuleCoord{1, 0}))) < 1e-10);

  const CocycleEvaluator sq(builtin_rule("square00x"));
  const auto s0 = sq.fb_amplitude(FourierIndex::zero(2));
  const double want[4] = {0.0764, 0.1236, 0.1236, 0.2000};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(s0[i].real() == doctest::Approx(want[i]).epsilon(2e-3));
    CHECK(std::abs(s0[i] - kTau * kTau / 5 * sq.pf().v[i]) < 1e-12);
  }
  // Free wrapper agrees with the evaluator.
  const auto w = fb_amplitude(fib, pf_data(substitution_matrix(fib)), FourierIndex(ModuleCoord{2, -1}));
  CHECK(max_abs_diff(w, ev.fb_amplitude(FourierIndex(ModuleCoord{2, -1}))) < 1e-15);
}

TEST_CASE("tail bound steps grow with |y|") {
  const CocycleEvaluator ev(builtin_rule("fibonacci1d"));
  CHECK(ev.steps_for({1.0, 0.0}, 1e-9) <= ev.steps_for({100.0, 0.0}, 1e-9));
  CHECK(ev.steps_for({1.0, 0.0}, 1e-6) <= ev.steps_for({1.0, 0.0}, 1e-12));
  const auto lim = ev.limit_C({3.0, 0.0}, 1e-9);
  CHECK(lim.residual <= 1e-9);
  CHECK(lim.n_used == ev.steps_for({3.0, 0.0}, 1e-9));
}
