#include <doctest.h>

#include <cmath>

#include "goldentile/windows.hpp"

using namespace goldentile;

namespace {

// Image of the set pixel centres under a linear map, one pixel per centre.
Bitmap linear_image(const WindowSet& ws, const Bitmap& a, double m00, double m01, double m10, double m11) {
  Bitmap out(a.width(), a.height());
  for (int y = 0; y < a.height(); ++y)
    for (int x = 0; x < a.width(); ++x) {
      if (!a.get(x, y)) continue;
      const double X = ws.box.lo + (x + 0.5) * ws.pixel(), Y = ws.box.lo + (y + 0.5) * ws.pixel();
      const int px = static_cast<int>(std::floor(ws.to_pixel(m00 * X + m01 * Y)));
      const int py = static_cast<int>(std::floor(ws.to_pixel(m10 * X + m11 * Y)));
      if (px >= 0 && py >= 0 && px < a.width() && py < a.height()) out.set(px, py);
    }
  return out;
}

Bitmap cover(const WindowSet& ws, double x0, double x1, double y0, double y1) {
  return box_cover(ws, {x0, y0}, {x1, y1});
}

void check_rectangles(const WindowSet& ws) {
  // Products of the Fibonacci intervals W_a = [tau-2, tau-1], W_b = [-1, tau-2].
  const double a0 = kTau - 2, a1 = kTau - 1, b0 = -1, b1 = kTau - 2;
  CHECK(hausdorff_pixels(ws.outer[0], cover(ws, b0, b1, b0, b1)) <= 1);
  CHECK(hausdorff_pixels(ws.outer[1], cover(ws, a0, a1, b0, b1)) <= 1);
  CHECK(hausdorff_pixels(ws.outer[2], cover(ws, b0, b1, a0, a1)) <= 1);
  CHECK(hausdorff_pixels(ws.outer[3], cover(ws, a0, a1, a0, a1)) <= 1);
}

void check_brackets(const InflationRule& rule, const WindowSet& ws) {
  const auto areas = window_areas(ws);
  const auto target = target_areas(rule);
  REQUIRE(areas.size() == target.size());
  for (std::size_t i = 0; i < areas.size(); ++i) {
    CHECK(areas[i].lower <= target[i]);
    CHECK(target[i] <= areas[i].upper);
  }
}

}  // namespace

TEST_CASE("bitmap helpers") {
  Bitmap b(8, 8);
  b.set(1, 2);
  b.set(6, 7);
  CHECK(b.count() == 2);
  CHECK(transpose(b).get(2, 1) == 1);
  CHECK(upsample(b, 2).count() == 8);
  const auto d = downsample_any(b, 4);
  CHECK(d.width() == 2);
  CHECK(d.get(0, 0) == 1);
  CHECK(d.get(1, 1) == 1);
  Bitmap c = b;
  c.set(1, 5);
  CHECK(hausdorff_pixels(b, b) == 0);
  CHECK(hausdorff_pixels(b, c) == 3);
  CHECK(hausdorff_pixels(b, Bitmap(8, 8)) < 0);
}

TEST_CASE("box counts") {
  Bitmap full(64, 64, 1);
  const auto n = box_counts(full, 0, 3);
  CHECK(n == std::vector<std::size_t>{4096, 1024, 256, 64});
  Bitmap line(64, 64);
  for (int x = 0; x < 64; ++x) line.set(x, 10);
  const auto m = box_counts(line, 0, 3);
  CHECK(m == std::vector<std::size_t>{64, 32, 16, 8});
}

TEST_CASE("Fibonacci windows") {
  const auto rule = builtin_rule("fibonacci1d");
  const auto ifs = window_ifs(rule);
  CHECK(box_invariant(ifs));
  const auto ws = solve_windows(ifs, 4096);
  REQUIRE(ws.outer.size() == 2);
  CHECK(ws.outer[0].height() == 1);
  CHECK(hausdorff_pixels(ws.outer[0], box_cover(ws, {kTau - 2, 0}, {kTau - 1, 0})) <= 1);
  CHECK(hausdorff_pixels(ws.outer[1], box_cover(ws, {-1, 0}, {kTau - 2, 0})) <= 1);
  check_brackets(rule, ws);
  const auto areas = window_areas(ws);
  CHECK(areas[0].upper - areas[0].lower < 0.01);
  CHECK(ws.multiplicity == 1);
}

TEST_CASE("square windows are products of intervals") {
  const auto rule = dpv_rule({0, 0, 0});
  const auto ws = solve_windows(window_ifs(rule), 1024);
  check_rectangles(ws);
  check_brackets(rule, ws);
  // Inner sets sit inside the outer sets.
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& in = ws.inner[i];
    const auto& out = ws.outer[i];
    bool inside = true;
    for (std::size_t p = 0; p < in.data().size(); ++p) inside &= !in.data()[p] || out.data()[p];
    CHECK(inside);
  }
  const auto sq = solve_windows(window_ifs(builtin_rule("square00x")), 1024);
  for (std::size_t i = 0; i < 4; ++i) CHECK(sq.outer[i] == ws.outer[i]);
}

TEST_CASE("twisted windows") {
  const auto rule = builtin_rule("twisted4");
  const auto ws = solve_windows(window_ifs(rule), 4096);
  const auto fib = solve_windows(window_ifs(builtin_rule("fibonacci1d")), 4096);
  CHECK(hausdorff_pixels(ws.outer[0], fib.outer[0]) <= 2);
  CHECK(hausdorff_pixels(ws.outer[1], fib.outer[0]) <= 2);
  CHECK(hausdorff_pixels(ws.outer[2], fib.outer[1]) <= 2);
  CHECK(hausdorff_pixels(ws.outer[3], fib.outer[1]) <= 2);
  CHECK(ws.multiplicity == 2);
  check_brackets(rule, ws);
}

TEST_CASE("shear maps the (0,0,0) windows onto the (0,0,1) windows") {
  const auto w0 = solve_windows(window_ifs(dpv_rule({0, 0, 0})), 1024);
  const auto w1 = solve_windows(window_ifs(dpv_rule({0, 0, 1})), 1024);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(hausdorff_pixels(linear_image(w0, w0.outer[i], 1, -1, 0, 1), w1.outer[i]) <= 2);
}

TEST_CASE("transposed rule gives transposed windows") {
  const auto rule = dpv_rule({0, 1, 4});
  const auto ws = solve_windows(window_ifs(rule), 1024);
  const auto wt = solve_windows(window_ifs(transpose_rule(rule)), 1024);
  CHECK(hausdorff_pixels(transpose(ws.outer[0]), wt.outer[0]) <= 1);
  CHECK(hausdorff_pixels(transpose(ws.outer[1]), wt.outer[2]) <= 1);
  CHECK(hausdorff_pixels(transpose(ws.outer[2]), wt.outer[1]) <= 1);
  CHECK(hausdorff_pixels(transpose(ws.outer[3]), wt.outer[3]) <= 1);
}

TEST_CASE("windows are invariant under one IFS step") {
  for (const DPVCode code : {DPVCode{0, 0, 3}, DPVCode{0, 0, 6}, DPVCode{1, 1, 1}}) {
    const auto ifs = window_ifs(dpv_rule(code));
    CHECK(box_invariant(ifs));
    const auto ws = solve_windows(ifs, 1024);
    const auto next = hutchinson_step(ifs, ws.outer, ws.box);
    for (std::size_t i = 0; i < 4; ++i) CHECK(hausdorff_pixels(next[i], ws.outer[i]) <= 2);
    // Refining the raster moves the set by at most a couple of coarse pixels.
    const auto fine = solve_windows(ifs, 2048);
    for (std::size_t i = 0; i < 4; ++i) CHECK(hausdorff_pixels(downsample_any(fine.outer[i], 2), ws.outer[i]) <= 2);
  }
}

TEST_CASE("solver is deterministic across threads") {
  const auto ifs = window_ifs(dpv_rule({1, 1, 0}));
  SolveOptions one, three;
  three.threads = 3;
  const auto a = solve_windows(ifs, 1024, one);
  const auto b = solve_windows(ifs, 1024, three);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.outer[i] == b.outer[i]);
    CHECK(a.inner[i] == b.inner[i]);
  }
}

TEST_CASE("polygon classification at 1024") {
  for (const DPVCode code : {DPVCode{0, 0, 0}, DPVCode{0, 1, 9}, DPVCode{1, 0, 3}, DPVCode{1, 1, 6}}) {
    const auto rule = dpv_rule(code);
    const auto ws = solve_windows(window_ifs(rule), 1024);
    const auto cls = classify(rule, ws);
    CHECK(cls.tag == WindowTag::OriginalRectangle);
    CHECK(cls.hull_vertices == 4);
    check_brackets(rule, ws);
  }
  const auto rule = dpv_rule({0, 0, 1});
  const auto cls = classify(rule, solve_windows(window_ifs(rule), 1024));
  CHECK(cls.tag == WindowTag::Parallelogram);
  REQUIRE(cls.slope.has_value());
  CHECK(*cls.slope == doctest::Approx(-1.0).epsilon(0.01));
  CHECK_THROWS(classify(rule, solve_windows(window_ifs(rule), 512)));
}

TEST_CASE("fractal classification at 4096") {
  const std::pair<DPVCode, WindowTag> cases[] = {
      {{0, 0, 6}, WindowTag::Castle}, {{0, 0, 5}, WindowTag::Cross}, {{0, 0, 7}, WindowTag::Island}};
  for (const auto& [code, tag] : cases) {
    const auto rule = dpv_rule(code);
    const auto ws = solve_windows(window_ifs(rule), 4096);
    const auto cls = classify(rule, ws);
    CHECK(cls.tag == tag);
    REQUIRE(cls.boundary_dim.has_value());
    CHECK(std::abs(*cls.boundary_dim - hausdorff_dimension(tag)) < 0.1);
    CHECK(cls.hull_vertices != 4);
    check_brackets(rule, ws);
  }
}

TEST_CASE("boundary polynomials") {
  CHECK(hausdorff_dimension(WindowTag::Castle) == doctest::Approx(quoted_dimension(WindowTag::Castle)).epsilon(1e-3));
  for (auto tag : {WindowTag::Castle, WindowTag::Cross, WindowTag::Island}) {
    CHECK(std::abs(hausdorff_dimension(tag) - quoted_dimension(tag)) < 1e-3);
    CHECK(hausdorff_dimension(tag) > 1);
    CHECK(hausdorff_dimension(tag) < 2);
  }
  CHECK(quoted_dimension(WindowTag::Castle) == 1.875);
  CHECK(quoted_dimension(WindowTag::Cross) == 1.756);
  CHECK(quoted_dimension(WindowTag::Island) == 1.561);
  CHECK_THROWS(boundary_polynomial(WindowTag::Parallelogram));
  CHECK(to_string(WindowTag::OriginalRectangle) == "original-rectangle");
}

TEST_CASE("target areas") {
  const auto t = target_areas(dpv_rule({0, 0, 0}));
  CHECK(t[0] == doctest::Approx((kTau - 1) * (kTau - 1)));
  CHECK(t[3] == doctest::Approx(1.0));
  const auto f = target_areas(builtin_rule("fibonacci1d"));
  CHECK(f[0] == doctest::Approx(1.0));
  CHECK(f[1] == doctest::Approx(kTau - 1));
}
