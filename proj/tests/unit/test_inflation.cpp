#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "goldentile/inflation.hpp"

using namespace goldentile;

namespace {

const GoldenNumber T = GoldenNumber::tau();
const GoldenNumber O{0};
const GoldenNumber I{1};

bool holds(const InflationRule& r, int i, int j, const GoldenVec& t) {
  const auto& list = r.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return std::find(list.begin(), list.end(), t) != list.end();
}

std::size_t entries(const InflationRule& r, int j) {
  std::size_t n = 0;
  for (int i = 0; i < r.size(); ++i) n += r.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].size();
  return n;
}

std::set<std::pair<int, GoldenVec>> tile_set(const Patch& p) {
  std::set<std::pair<int, GoldenVec>> s;
  for (const auto& t : p.tiles) s.insert({t.type, t.anchor});
  return s;
}

}  // namespace

TEST_CASE("Fibonacci rule") {
  const auto r = builtin_rule("fibonacci1d");
  CHECK(r.size() == 2);
  CHECK(holds(r, 0, 0, GoldenVec(O)));
  CHECK(holds(r, 0, 1, GoldenVec(O)));
  CHECK(holds(r, 1, 0, GoldenVec(T)));
  CHECK(r.T[1][1].empty());
  CHECK(substitution_matrix(r) == IntMatrix{{1, 1}, {1, 0}});
  CHECK(builtin_rule("fib1d").T == r.T);
  CHECK_THROWS_AS(builtin_rule("penrose"), std::invalid_argument);
}

TEST_CASE("square rule: column of the big square") {
  const auto r = builtin_rule("square00x");
  CHECK(holds(r, 0, 3, GoldenVec(T, T)));
  CHECK(holds(r, 1, 3, GoldenVec(O, T)));
  CHECK(holds(r, 2, 3, GoldenVec(T, O)));
  CHECK(holds(r, 3, 3, GoldenVec(O, O)));
  CHECK(entries(r, 3) == 4);
  CHECK(substitution_matrix(r) ==
        IntMatrix{{0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}});
  CHECK(same_displacements(r, dpv_rule({0, 0, 0})));
}

TEST_CASE("DPV examples") {
  const auto r1 = dpv_rule({0, 0, 1});
  CHECK(holds(r1, 0, 3, GoldenVec(O, T)));
  CHECK(holds(r1, 1, 3, GoldenVec(I, T)));
  CHECK(holds(r1, 2, 3, GoldenVec(T, O)));
  CHECK(holds(r1, 3, 3, GoldenVec(O, O)));
  const auto r2 = dpv_rule({1, 0, 0});
  CHECK(entries(r2, 1) == 2);
  CHECK(holds(r2, 2, 1, GoldenVec(O, O)));
  CHECK(holds(r2, 3, 1, GoldenVec(I, O)));
  CHECK(rule_from_selector("dpv:1,0,0").T == r2.T);
  CHECK(parse_dpv_code("1,1,11") == DPVCode{1, 1, 11});
  CHECK_THROWS(parse_dpv_code("2,0,0"));
  CHECK_THROWS(parse_dpv_code("0,0,12"));
  CHECK_THROWS(rule_from_selector("dpv:0,0"));
  CHECK(all_dpv_codes().size() == 48);
}

TEST_CASE("all DPVs share the substitution matrix and pass the stone-inflation check") {
  const auto m = substitution_matrix(dpv_rule({0, 0, 0}));
  std::set<std::string> seen;
  for (const auto& code : all_dpv_codes()) {
    const auto r = dpv_rule(code);
    CHECK(substitution_matrix(r) == m);
    const auto rep = verify_stone_inflation(r);
    CHECK_MESSAGE(rep.ok, code.to_string() << ": " << rep.message);
    std::ostringstream os;
    for (const auto& col : r.T)
      for (const auto& cell : col)
        for (const auto& t : cell) os << t << ';';
    seen.insert(os.str());
  }
  CHECK(seen.size() == 48);  // all rules are distinct
  CHECK(verify_stone_inflation(builtin_rule("fibonacci1d")).ok);
  CHECK(verify_stone_inflation(builtin_rule("twisted4")).ok);
}

TEST_CASE("corrupted rule fails with an overlap") {
  auto r = dpv_rule({0, 0, 0});
  for (auto& t : r.T[0][3]) t = t + GoldenVec(I, O) - GoldenVec(I, O) - GoldenVec(I, O) + GoldenVec(O, O);
  const auto rep = verify_stone_inflation(r);
  CHECK_FALSE(rep.ok);
  CHECK(rep.column == 3);
  CHECK_FALSE(rep.message.empty());
}

TEST_CASE("PF data") {
  const auto fib = pf_data(substitution_matrix(builtin_rule("fibonacci1d")));
  CHECK(fib.lambda == doctest::Approx(kTau).epsilon(1e-14));
  CHECK(fib.u[0] == doctest::Approx(1.1708204).epsilon(1e-7));
  CHECK(fib.u[1] == doctest::Approx(0.7236068).epsilon(1e-7));
  CHECK(fib.v[0] == doctest::Approx(0.6180340).epsilon(1e-7));
  CHECK(fib.v[1] == doctest::Approx(0.3819660).epsilon(1e-7));

  const auto sq = pf_data(substitution_matrix(builtin_rule("square00x")));
  CHECK(sq.lambda == doctest::Approx(kTau * kTau).epsilon(1e-14));
  const double want[4] = {0.1458980, 0.2360680, 0.2360680, 0.3819660};
  for (int i = 0; i < 4; ++i) CHECK(sq.v[static_cast<std::size_t>(i)] == doctest::Approx(want[i]).epsilon(1e-7));

  const auto tw = pf_data(substitution_matrix(builtin_rule("twisted4")));
  CHECK(tw.lambda == doctest::Approx(kTau).epsilon(1e-14));
  const double s = (2 - kTau) / 2;
  const double tv[4] = {s * kTau, s * kTau, s, s};
  for (int i = 0; i < 4; ++i) CHECK(tw.v[static_cast<std::size_t>(i)] == doctest::Approx(tv[i]).epsilon(1e-12));

  CHECK_THROWS_AS(pf_data({{1, 0}, {0, 1}}), std::domain_error);
  CHECK_FALSE(is_primitive({{0, 1}, {1, 0}}));
  CHECK(is_primitive({{1, 1}, {1, 0}}));
}

TEST_CASE("PF projector is the limit of lambda^-n M^n") {
  for (const char* name : {"fibonacci1d", "square00x", "twisted4"}) {
    const auto m = substitution_matrix(builtin_rule(name));
    const auto pf = pf_data(m);
    const std::size_t n = m.size();
    // From M and from M^T: <u| is the PF vector of M^T.
    std::vector<double> mt_u(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mt_u[i] += static_cast<double>(m[j][i]) * pf.u[j];
    for (std::size_t i = 0; i < n; ++i) CHECK(mt_u[i] == doctest::Approx(pf.lambda * pf.u[i]).epsilon(1e-12));
    double uv = 0;
    for (std::size_t i = 0; i < n; ++i) uv += pf.u[i] * pf.v[i];
    CHECK(uv == doctest::Approx(1.0).epsilon(1e-13));
    // lambda^-40 M^40 against |v><u|.
    std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) p[i][i] = 1;
    for (int s = 0; s < 40; ++s) {
      std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t j = 0; j < n; ++j) q[i][j] += static_cast<double>(m[i][k]) * p[k][j] / pf.lambda;
      p = q;
    }
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(p[i][j] - pf.v[i] * pf.u[j]));
    CHECK_MESSAGE(worst < 1e-8, name);
  }
}

TEST_CASE("twisted spectrum") {
  const auto roots = complex_roots(charpoly(substitution_matrix(builtin_rule("twisted4"))));
  REQUIRE(roots.size() == 4);
  CHECK(static_cast<double>(roots[0].real()) == doctest::Approx(kTau).epsilon(1e-13));
  CHECK(static_cast<double>(std::abs(roots[1] - std::complex<long double>(0.5L, std::sqrt(3.0L) / 2))) < 1e-12);
  CHECK(static_cast<double>(std::abs(roots[2] - std::complex<long double>(0.5L, -std::sqrt(3.0L) / 2))) < 1e-12);
  CHECK(static_cast<double>(roots[3].real()) == doctest::Approx(1 - kTau).epsilon(1e-13));
}

TEST_CASE("inflated areas") {
  for (const char* sel : {"fib1d", "twisted4", "square00x", "dpv:1,1,7", "dpv:0,1,4"}) {
    const auto r = rule_from_selector(sel);
    for (int j = 0; j < r.size(); ++j) {
      // sum_i |T_ij| area(i) = tau^d area(j), exactly in Z[tau].
      GoldenNumber lhs{0};
      for (int i = 0; i < r.size(); ++i) {
        GoldenNumber a{1};
        for (int k = 0; k < r.dim; ++k) a = a * r.tiles[static_cast<std::size_t>(i)].extent[k];
        lhs = lhs + a * GoldenNumber(static_cast<std::int64_t>(r.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].size()));
      }
      GoldenNumber rhs{1};
      for (int k = 0; k < r.dim; ++k) rhs = rhs * r.tiles[static_cast<std::size_t>(j)].extent[k] * GoldenNumber::tau();
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("patches") {
  const auto sq = builtin_rule("square00x");
  const auto p1 = generate_patch(sq, 1, 3);
  CHECK(p1.tiles.size() == 4);
  for (const auto& t : p1.tiles) CHECK(holds(sq, t.type, 3, t.anchor));
  for (int t = 0; t < 4; ++t) {
    const auto p0 = generate_patch(sq, 0, t);
    REQUIRE(p0.tiles.size() == 1);
    CHECK(p0.tiles[0].type == t);
    CHECK(p0.tiles[0].anchor == GoldenVec::zero(2));
  }
  const auto f5 = generate_patch(builtin_rule("fibonacci1d"), 5, 0);
  CHECK(f5.tiles.size() == 13);
  CHECK(std::count_if(f5.tiles.begin(), f5.tiles.end(), [](const PatchTile& t) { return t.type == 0; }) == 8);
  CHECK_THROWS(generate_patch(sq, 2, 4));
}

TEST_CASE("supertile coherence") {
  for (const char* sel : {"fib1d", "twisted4", "dpv:0,0,0", "dpv:0,0,6", "dpv:1,0,5"}) {
    const auto r = rule_from_selector(sel);
    for (int t = 0; t < r.size(); ++t)
      for (int n = 0; n <= 4; ++n) {
        // patch(n+1, t) is the union over level-1 subtiles (i at s) of tau^n s + patch(n, i).
        const auto big = tile_set(generate_patch(r, n + 1, t));
        std::set<std::pair<int, GoldenVec>> rebuilt;
        GoldenNumber scale{1};
        for (int k = 0; k < n; ++k) scale = scale * GoldenNumber::tau();
        for (int i = 0; i < r.size(); ++i)
          for (const auto& s : r.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)])
            for (const auto& [type, a] : tile_set(generate_patch(r, n, i))) rebuilt.insert({type, s.scaled(scale) + a});
        CHECK_MESSAGE(big == rebuilt, sel << " tile " << t << " n=" << n);
      }
  }
}

TEST_CASE("reflections of the square rule") {
  const auto base = dpv_rule({0, 0, 0});
  CHECK(same_displacements(reflect(base, true, false), dpv_rule({1, 0, 3})));
  CHECK(same_displacements(reflect(base, false, true), dpv_rule({0, 1, 9})));
  CHECK(same_displacements(reflect(base, true, true), dpv_rule({1, 1, 6})));
  CHECK(same_displacements(transpose_rule(dpv_rule({0, 1, 3})), dpv_rule({1, 0, 9})));
}

TEST_CASE("densities") {
  const auto fib = builtin_rule("fibonacci1d");
  CHECK(point_density(fib, pf_data(substitution_matrix(fib))) == doctest::Approx(kTau / kSqrt5).epsilon(1e-14));
  const auto sq = builtin_rule("square00x");
  CHECK(point_density(sq, pf_data(substitution_matrix(sq))) == doctest::Approx(kTau * kTau / 5).epsilon(1e-14));
}
