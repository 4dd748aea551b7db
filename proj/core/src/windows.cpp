#include "goldentile/windows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goldentile/parallel.hpp"

namespace goldentile {

namespace {

using Pt = std::array<std::int64_t, 2>;

std::int64_t cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain on the row extremes; counter-clockwise, no collinear points.
std::vector<Pt> convex_hull(const Bitmap& b) {
  std::vector<Pt> pts;
  for (int y = 0; y < b.height(); ++y) {
    const std::uint8_t* r = b.row(y);
    int first = -1, last = -1;
    for (int x = 0; x < b.width(); ++x)
      if (r[x]) {
        if (first < 0) first = x;
        last = x;
      }
    if (first < 0) continue;
    pts.push_back({first, y});
    if (last != first) pts.push_back({last, y});
  }
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Pt> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= t && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

double point_line_distance(const std::array<double, 2>& p, const std::array<double, 2>& a,
                           const std::array<double, 2>& b) {
  const double dx = b[0] - a[0], dy = b[1] - a[1];
  const double len = std::hypot(dx, dy);
  if (len == 0) return std::hypot(p[0] - a[0], p[1] - a[1]);
  return std::abs(dx * (p[1] - a[1]) - dy * (p[0] - a[0])) / len;
}

bool axis_parallel(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  const double dx = std::abs(b[0] - a[0]), dy = std::abs(b[1] - a[1]);
  return std::min(dx, dy) <= 0.01 * std::max(dx, dy);
}

const WindowTag kFractalTags[] = {WindowTag::Castle, WindowTag::Cross, WindowTag::Island};

double fit_slope(const std::vector<std::size_t>& counts, int kmin) {
  // log N against log(1/side) with side = 2^k.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double x = -(kmin + static_cast<double>(i)) * std::log(2.0);
    const double y = std::log(static_cast<double>(counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double band_dimension(const Bitmap& band, int resolution) {
  constexpr int kmin = 2, kmax = 7;
  std::vector<std::size_t> counts;
  for (int k = kmin; k <= kmax; ++k) {
    if (resolution >> k < 8) break;  // need a few boxes per axis
    counts.push_back(box_counts(band, k, k)[0]);
  }
  if (counts.size() < 5) throw std::domain_error("boundary_dimension_estimate: fewer than 5 usable scales");
  for (auto c : counts)
    if (c == 0) throw std::domain_error("boundary_dimension_estimate: empty boundary band");
  return fit_slope(counts, kmin);
}

Bitmap band_of(const Bitmap& outer, const Bitmap& inner) {
  Bitmap b(outer.width(), outer.height());
  const auto& o = outer.data();
  const auto& in = inner.data();
  auto& d = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) d[i] = (o[i] && !in[i]) ? 1 : 0;
  return b;
}

}  // namespace

std::vector<AreaBounds> window_areas(const WindowSet& ws) {
  std::vector<AreaBounds> out;
  const double a = ws.pixel_area();
  for (std::size_t i = 0; i < ws.outer.size(); ++i) {
    AreaBounds b;
    b.upper = static_cast<double>(ws.outer[i].count()) * a;
    b.lower = i < ws.inner.size() ? static_cast<double>(ws.inner[i].count()) * a : 0.0;
    out.push_back(b);
  }
  return out;
}

std::vector<double> target_areas(const InflationRule& rule) {
  const PFData pf = pf_data(substitution_matrix(rule));
  // area(W_i) = sqrt5^d dens(Lambda_i); the twisted chain splits each
  // Fibonacci point set into two halves sharing the same window.
  const double scale = std::pow(kSqrt5, rule.dim) * point_density(rule, pf) * (rule.name == "twisted4" ? 2.0 : 1.0);
  std::vector<double> out;
  for (double v : pf.v) out.push_back(scale * v);
  return out;
}

std::string to_string(WindowTag tag) {
  switch (tag) {
    case WindowTag::OriginalRectangle: return "original-rectangle";
    case WindowTag::Parallelogram: return "parallelogram";
    case WindowTag::Castle: return "castle";
    case WindowTag::Cross: return "cross";
    case WindowTag::Island: return "island";
    case WindowTag::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

double hull_deficit(const Bitmap& b) {
  const auto hull = convex_hull(b);
  const std::size_t set = b.count();
  if (set == 0 || hull.size() < 3) return 0.0;
  std::int64_t ymin = hull[0][1], ymax = hull[0][1];
  for (const auto& p : hull) {
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  std::size_t missing = 0;
  for (std::int64_t y = ymin; y <= ymax; ++y) {
    double xl = INFINITY, xr = -INFINITY;
    for (std::size_t e = 0; e < hull.size(); ++e) {
      const Pt& p = hull[e];
      const Pt& q = hull[(e + 1) % hull.size()];
      if (y < std::min(p[1], q[1]) || y > std::max(p[1], q[1])) continue;
      if (p[1] == q[1]) {
        xl = std::min({xl, static_cast<double>(p[0]), static_cast<double>(q[0])});
        xr = std::max({xr, static_cast<double>(p[0]), static_cast<double>(q[0])});
      } else {
        const double x = static_cast<double>(p[0]) + static_cast<double>(y - p[1]) * static_cast<double>(q[0] - p[0]) /
                                                          static_cast<double>(q[1] - p[1]);
        xl = std::min(xl, x);
        xr = std::max(xr, x);
      }
    }
    const auto x0 = static_cast<int>(std::ceil(xl - 1e-9));
    const auto x1 = static_cast<int>(std::floor(xr + 1e-9));
    const std::uint8_t* r = b.row(static_cast<int>(y));
    for (int x = x0; x <= x1; ++x) missing += r[x] == 0;
  }
  return static_cast<double>(missing) / static_cast<double>(set);
}

std::vector<std::array<double, 2>> simplified_hull(const Bitmap& b, double tol) {
  const auto hull = convex_hull(b);
  std::vector<std::array<double, 2>> v;
  for (const auto& p : hull) v.push_back({static_cast<double>(p[0]), static_cast<double>(p[1])});
  while (v.size() > 3) {
    std::size_t best = 0;
    double bestd = INFINITY;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[(i + v.size() - 1) % v.size()];
      const auto& c = v[(i + 1) % v.size()];
      const double d = point_line_distance(v[i], a, c);
      if (d < bestd) {
        bestd = d;
        best = i;
      }
    }
    if (bestd >= tol) break;
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return v;
}

std::vector<std::size_t> box_counts(const Bitmap& b, int kmin, int kmax) {
  std::vector<std::size_t> out;
  for (int k = kmin; k <= kmax; ++k) {
    const int s = 1 << k;
    const int sy = b.height() == 1 ? 1 : s;
    const int nx = (b.width() + s - 1) / s;
    const int ny = (b.height() + sy - 1) / sy;
    std::vector<std::uint8_t> hit(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny), 0);
    for (int y = 0; y < b.height(); ++y) {
      const std::uint8_t* r = b.row(y);
      std::uint8_t* hr = hit.data() + static_cast<std::size_t>(y / sy) * static_cast<std::size_t>(nx);
      for (int x = 0; x < b.width(); ++x)
        if (r[x]) hr[x / s] = 1;
    }
    std::size_t c = 0;
    for (auto v : hit) c += v;
    out.push_back(c);
  }
  return out;
}

double boundary_dimension_estimate(const WindowSet& ws, int window) {
  if (window < 0 || window >= static_cast<int>(ws.outer.size()))
    throw std::invalid_argument("boundary_dimension_estimate: window index out of range");
  if (ws.inner.size() != ws.outer.size()) throw std::invalid_argument("boundary_dimension_estimate: inner rasters missing");
  const auto i = static_cast<std::size_t>(window);
  return band_dimension(band_of(ws.outer[i], ws.inner[i]), ws.resolution);
}

double union_boundary_dimension_estimate(const WindowSet& ws) {
  if (ws.inner.size() != ws.outer.size()) throw std::invalid_argument("union_boundary_dimension_estimate: inner rasters missing");
  Bitmap band(ws.outer[0].width(), ws.outer[0].height());
  for (std::size_t i = 0; i < ws.outer.size(); ++i) {
    const auto b = band_of(ws.outer[i], ws.inner[i]);
    for (std::size_t p = 0; p < b.data().size(); ++p) band.data()[p] |= b.data()[p];
  }
  return band_dimension(band, ws.resolution);
}

WindowClass classify(const InflationRule& rule, const WindowSet& ws) {
  if (rule.dim != 2 || ws.dim != 2) throw std::invalid_argument("classify: needs a 2D rule");
  if (ws.resolution < 1024) throw std::invalid_argument("classify: resolution must be >= 1024");
  WindowClass wc;
  for (const auto& b : ws.outer) wc.max_hull_deficit = std::max(wc.max_hull_deficit, hull_deficit(b));
  if (wc.max_hull_deficit <= 0.01) {
    bool all_axis = true;
    bool all_quads = true;
    double best_len = 0;
    for (std::size_t i = 0; i < ws.outer.size(); ++i) {
      const auto hull = simplified_hull(ws.outer[i]);
      if (i == 3) wc.hull_vertices = static_cast<int>(hull.size());
      all_quads = all_quads && hull.size() == 4;
      for (std::size_t e = 0; e < hull.size(); ++e) {
        const auto& a = hull[e];
        const auto& c = hull[(e + 1) % hull.size()];
        if (axis_parallel(a, c)) continue;
        all_axis = false;
        const double dx = c[0] - a[0], dy = c[1] - a[1];
        if (i != 3 || std::hypot(dx, dy) <= best_len) continue;
        // Longest slanted edge of W3; dx/dy for steep edges, dy/dx otherwise.
        best_len = std::hypot(dx, dy);
        wc.slope = std::abs(dy) >= std::abs(dx) ? dx / dy : dy / dx;
      }
    }
    if (all_quads) {
      wc.tag = all_axis ? WindowTag::OriginalRectangle : WindowTag::Parallelogram;
      if (all_axis) wc.slope.reset();
      return wc;
    }
    wc.note = "convex windows that are not quadrilaterals";
  }
  wc.slope.reset();
  const double d = boundary_dimension_estimate(ws, 3);
  wc.boundary_dim = d;
  WindowTag best = WindowTag::Castle;
  double bestd = INFINITY, second = INFINITY;
  for (auto t : kFractalTags) {
    const double dist = std::abs(d - quoted_dimension(t));
    if (dist < bestd) {
      second = bestd;
      bestd = dist;
      best = t;
    } else if (dist < second) {
      second = dist;
    }
  }
  if (second - bestd < 0.01) {
    wc.tag = WindowTag::Ambiguous;
    wc.note = "boundary dimension " + std::to_string(d) + " is nearly equidistant from two classes";
  } else {
    wc.tag = best;
  }
  return wc;
}

Census classification_census(int resolution, int threads) {
  Census census;
  for (const auto& tag : {WindowTag::OriginalRectangle, WindowTag::Parallelogram, WindowTag::Castle,
                          WindowTag::Cross, WindowTag::Island})
    census.counts[to_string(tag)] = 0;
  SolveOptions opt;
  opt.threads = threads;
  for (const auto& code : all_dpv_codes()) {
    const auto rule = dpv_rule(code);
    const auto ws = solve_windows(window_ifs(rule), resolution, opt);
    CensusEntry e{code, classify(rule, ws), window_areas(ws)};
    const auto name = to_string(e.cls.tag);
    census.counts[name] += 1;
    if (e.cls.tag == WindowTag::Ambiguous) census.ambiguous.push_back(code.to_string() + ": " + e.cls.note);
    census.entries.push_back(std::move(e));
  }
  return census;
}

Polynomial boundary_polynomial(WindowTag tag) {
  switch (tag) {
    case WindowTag::Castle: return {1, -4, 5, -3};
    case WindowTag::Cross: return {1, -2, -2, 2, 4, -3, -5, 1, 5, 2, -2, -3, -1};
    case WindowTag::Island: return {1, -2, -1, 2, 1, -4};
    default: throw std::invalid_argument("boundary_polynomial: not a fractal tag");
  }
}

double hausdorff_dimension(WindowTag tag) {
  const long double alpha = largest_real_root(boundary_polynomial(tag));
  return static_cast<double>(std::log(alpha) / std::log(static_cast<long double>(kTau)));
}

double quoted_dimension(WindowTag tag) {
  switch (tag) {
    case WindowTag::Castle: return 1.875;
    case WindowTag::Cross: return 1.756;
    case WindowTag::Island: return 1.561;
    default: throw std::invalid_argument("quoted_dimension: not a fractal tag");
  }
}

}  // namespace goldentile
