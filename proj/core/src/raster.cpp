#include <algorithm>
#include <bit>
#include <cstring>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "goldentile/parallel.hpp"
#include "goldentile/windows.hpp"

namespace goldentile {

namespace {

struct Run {
  int y, x0, x1;  // inclusive
};

// Pixels are 0/1 bytes, so 8-byte words can be skipped, and-ed and popcounted at once.
inline std::uint64_t load_word(const std::uint8_t* p) {
  std::uint64_t w;
  std::memcpy(&w, p, sizeof w);
  return w;
}

std::vector<Run> runs_of(const Bitmap& b) {
  std::vector<Run> out;
  const int w = b.width();
  for (int y = 0; y < b.height(); ++y) {
    const std::uint8_t* r = b.row(y);
    int x = 0;
    while (x < w) {
      while (x + 8 <= w && load_word(r + x) == 0) x += 8;
      while (x < w && !r[x]) ++x;
      if (x == w) break;
      const int s = x;
      while (x + 8 <= w && load_word(r + x) == 0x0101010101010101ULL) x += 8;
      while (x < w && r[x]) ++x;
      out.push_back({y, s, x - 1});
    }
  }
  return out;
}

// Affine map x -> c x + s per axis, applied to a raster of source window `source`.
struct AffineBranch {
  int source;
  double c;
  RealVec shift;
};

constexpr double kEps = 1e-9;

// Outward pixel cover of the image of the pixel interval [i0, i1 + 1) (in pixel units).
inline void image_range(double c, double s, const RasterBox& box, double h, int n, int i0, int i1, int& lo, int& hi) {
  const double a = box.lo + i0 * h;
  const double b = box.lo + (i1 + 1) * h;
  double ia = c * a + s, ib = c * b + s;
  if (ia > ib) std::swap(ia, ib);
  lo = static_cast<int>(std::floor((ia - box.lo) / h - kEps));
  hi = static_cast<int>(std::floor((ib - box.lo) / h + kEps));
  lo = std::clamp(lo, 0, n - 1);
  hi = std::clamp(hi, 0, n - 1);
}

void mark_branch(const AffineBranch& br, const std::vector<Run>& src, int dim, const RasterBox& box, double h,
                 Bitmap& dst) {
  const int w = dst.width();
  for (const auto& run : src) {
    int x0, x1;
    image_range(br.c, br.shift[0], box, h, w, run.x0, run.x1, x0, x1);
    int y0 = 0, y1 = 0;
    if (dim == 2) image_range(br.c, br.shift[1], box, h, dst.height(), run.y, run.y, y0, y1);
    for (int y = y0; y <= y1; ++y) std::fill(dst.row(y) + x0, dst.row(y) + x1 + 1, std::uint8_t{1});
  }
}

std::vector<Bitmap> apply_branches(const std::vector<std::vector<AffineBranch>>& branches, int dim,
                                   const std::vector<Bitmap>& cur, const RasterBox& box, int threads) {
  const int n = static_cast<int>(cur.size());
  const double h = (box.hi - box.lo) / cur[0].width();
  std::vector<std::vector<Run>> runs(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t j) { runs[j] = runs_of(cur[j]); });
  std::vector<Bitmap> next(static_cast<std::size_t>(n));
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    Bitmap b(cur[i].width(), cur[i].height());
    for (const auto& br : branches[i]) mark_branch(br, runs[static_cast<std::size_t>(br.source)], dim, box, h, b);
    next[i] = std::move(b);
  });
  return next;
}

std::vector<std::vector<AffineBranch>> plain_branches(const GraphIFS& ifs) {
  std::vector<std::vector<AffineBranch>> out(static_cast<std::size_t>(ifs.size));
  for (int i = 0; i < ifs.size; ++i)
    for (const auto& b : ifs.branches[static_cast<std::size_t>(i)])
      out[static_cast<std::size_t>(i)].push_back({b.source, ifs.contraction, b.shift});
  return out;
}

// All paths of length `depth`: x -> c^depth x + sum_k c^k s_(k+1).
std::vector<std::vector<AffineBranch>> composed_branches(const GraphIFS& ifs, int depth) {
  auto cur = plain_branches(ifs);
  for (int d = 1; d < depth; ++d) {
    std::vector<std::vector<AffineBranch>> next(static_cast<std::size_t>(ifs.size));
    for (int i = 0; i < ifs.size; ++i)
      for (const auto& outer : cur[static_cast<std::size_t>(i)])
        for (const auto& b : ifs.branches[static_cast<std::size_t>(outer.source)])
          next[static_cast<std::size_t>(i)].push_back(
              {b.source, outer.c * ifs.contraction,
               {outer.shift[0] + outer.c * b.shift[0], outer.shift[1] + outer.c * b.shift[1]}});
    cur = std::move(next);
  }
  return cur;
}

// a &= b; returns the number of set pixels left in a.
std::size_t intersect_into(Bitmap& a, const Bitmap& b) {
  auto& x = a.data();
  const auto& y = b.data();
  std::size_t c = 0, i = 0;
  for (; i + 8 <= x.size(); i += 8) {
    const std::uint64_t v = load_word(&x[i]) & load_word(&y[i]);
    std::memcpy(&x[i], &v, sizeof v);
    c += static_cast<std::size_t>(std::popcount(v));
  }
  for (; i < x.size(); ++i) {
    x[i] &= y[i];
    c += x[i];
  }
  return c;
}

}  // namespace

std::size_t Bitmap::count() const {
  std::size_t c = 0;
  for (auto v : px_) c += v != 0;
  return c;
}

Bitmap transpose(const Bitmap& b) {
  Bitmap t(b.height(), b.width());
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x) t.set(y, x, b.get(x, y));
  return t;
}

Bitmap upsample(const Bitmap& b, int factor) {
  const int fy = b.height() == 1 ? 1 : factor;
  Bitmap u(b.width() * factor, b.height() * fy);
  for (int y = 0; y < b.height(); ++y) {
    const std::uint8_t* src = b.row(y);
    std::uint8_t* dst = u.row(y * fy);
    for (int x = 0; x < b.width(); ++x) std::fill_n(dst + x * factor, factor, src[x]);
    for (int k = 1; k < fy; ++k) std::copy_n(dst, u.width(), u.row(y * fy + k));
  }
  return u;
}

Bitmap downsample_any(const Bitmap& b, int factor) {
  const int fy = b.height() == 1 ? 1 : factor;
  Bitmap d(b.width() / factor, std::max(1, b.height() / fy));
  for (int y = 0; y < b.height(); ++y)
    for (int x = 0; x < b.width(); ++x)
      if (b.get(x, y)) d.set(x / factor, y / fy);
  return d;
}

namespace {

// Chebyshev distance to the nearest set pixel (two-pass, exact for L-infinity).
std::vector<int> distance_to(const Bitmap& b) {
  const int w = b.width(), h = b.height();
  const int inf = std::numeric_limits<int>::max() / 2;
  std::vector<int> d(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), inf);
  auto at = [&](int x, int y) -> int& { return d[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)]; };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (b.get(x, y)) {
        at(x, y) = 0;
        continue;
      }
      int best = at(x, y);
      for (int dy = -1; dy <= 0; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dy == 0 && dx >= 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || ny < 0 || nx >= w) continue;
          best = std::min(best, at(nx, ny) + 1);
        }
      at(x, y) = best;
    }
  for (int y = h - 1; y >= 0; --y)
    for (int x = w - 1; x >= 0; --x) {
      int best = at(x, y);
      for (int dy = 0; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          if (dy == 0 && dx <= 0) continue;
          const int nx = x + dx, ny = y + dy;
          if (nx < 0 || nx >= w || ny >= h) continue;
          best = std::min(best, at(nx, ny) + 1);
        }
      at(x, y) = best;
    }
  return d;
}

}  // namespace

double hausdorff_pixels(const Bitmap& a, const Bitmap& b) {
  if (a.width() != b.width() || a.height() != b.height()) throw std::invalid_argument("hausdorff_pixels: size mismatch");
  const bool ea = a.empty(), eb = b.empty();
  if (ea && eb) return 0;
  if (ea || eb) return -1;
  const auto da = distance_to(a);
  const auto db = distance_to(b);
  int worst = 0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (a.data()[i]) worst = std::max(worst, db[i]);
    if (b.data()[i]) worst = std::max(worst, da[i]);
  }
  return worst;
}

GraphIFS window_ifs(const InflationRule& rule) {
  GraphIFS ifs;
  ifs.dim = rule.dim;
  ifs.size = rule.size();
  ifs.branches.resize(static_cast<std::size_t>(ifs.size));
  for (int i = 0; i < ifs.size; ++i)
    for (int j = 0; j < ifs.size; ++j)
      for (const auto& t : rule.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        const GoldenVec ts = t.star();
        ifs.branches[static_cast<std::size_t>(i)].push_back({j, ts.value(), ts});
      }
  // Swapping a long and a short tile moves a control point by (tau - 1), whose star is -tau.
  GoldenNumber longest = rule.tiles[0].extent[0], shortest = rule.tiles[0].extent[0];
  for (const auto& t : rule.tiles)
    for (int a = 0; a < rule.dim; ++a) {
      if (t.extent[a] > longest) longest = t.extent[a];
      if (t.extent[a] < shortest) shortest = t.extent[a];
    }
  ifs.lattice = std::abs((longest - shortest).star_value());
  return ifs;
}

bool box_invariant(const GraphIFS& ifs) {
  const GoldenNumber lo{-2, 0};
  const GoldenNumber hi{-1, 2};  // 2 tau - 1 = sqrt5
  const GoldenNumber sigma = GoldenNumber::sigma();
  for (const auto& list : ifs.branches)
    for (const auto& b : list)
      for (int a = 0; a < ifs.dim; ++a) {
        const GoldenNumber s = b.exact[a];
        const GoldenNumber img_lo = sigma * hi + s;  // sigma < 0 reverses the interval
        const GoldenNumber img_hi = sigma * lo + s;
        if (img_lo < lo || img_hi > hi) return false;
      }
  return true;
}

double WindowSet::pixel_area() const { return std::pow(pixel(), dim); }

std::vector<Bitmap> hutchinson_step(const GraphIFS& ifs, const std::vector<Bitmap>& rasters, const RasterBox& box) {
  return apply_branches(plain_branches(ifs), ifs.dim, rasters, box, 1);
}

WindowSet solve_windows(const GraphIFS& ifs, int resolution, const SolveOptions& opt) {
  if (resolution < 8 || (resolution & (resolution - 1)) != 0)
    throw std::invalid_argument("solve_windows: resolution must be a power of two >= 8");
  if (!(std::abs(ifs.contraction) < 1.0)) throw std::invalid_argument("solve_windows: IFS is not contractive");
  if (opt.check_box && !box_invariant(ifs))
    throw std::domain_error("solve_windows: raster box is not invariant under the IFS");
  WindowSet ws;
  ws.dim = ifs.dim;
  const auto branches = plain_branches(ifs);
  int r = std::min(resolution, std::max(8, opt.coarse));
  std::vector<Bitmap> cur(static_cast<std::size_t>(ifs.size), Bitmap(r, ifs.dim == 2 ? r : 1, 1));
  std::size_t set = 0;
  for (const auto& b : cur) set += b.count();
  for (;;) {
    // Monotone decreasing: the start contains the attractor and its image.
    // Every iterate is a certified superset, so stopping early only costs tightness.
    for (;;) {
      auto next = apply_branches(branches, ifs.dim, cur, ws.box, opt.threads);
      std::size_t after = 0;
      for (std::size_t i = 0; i < next.size(); ++i) after += intersect_into(next[i], cur[i]);
      ++ws.iterations;
      cur = std::move(next);
      const std::size_t removed = set - after;
      set = after;
      if (static_cast<double>(removed) <= opt.settle * static_cast<double>(after)) break;
    }
    if (r == resolution) break;
    for (auto& b : cur) b = upsample(b, 2);
    r *= 2;
    set *= ifs.dim == 2 ? 4 : 2;
  }
  if (opt.sharpen) {
    auto next = apply_branches(composed_branches(ifs, 4), ifs.dim, cur, ws.box, opt.threads);
    for (std::size_t i = 0; i < next.size(); ++i) intersect_into(next[i], cur[i]);
    cur = std::move(next);
  }
  ws.resolution = resolution;
  ws.outer = std::move(cur);
  if (opt.inner) inner_certificate(ifs, ws);
  return ws;
}

int inner_certificate(const GraphIFS& ifs, WindowSet& ws) {
  const int w = ws.resolution;
  const int hgt = ws.dim == 2 ? w : 1;
  const double h = ws.pixel();
  const double span = ws.box.hi - ws.box.lo;
  const int nmax = static_cast<int>(std::ceil(span / ifs.lattice)) + 1;
  // Per-row difference arrays of the coverage count.
  std::vector<std::int16_t> diff(static_cast<std::size_t>(hgt) * static_cast<std::size_t>(w + 1), 0);
  auto add = [&](int y, int x0, int x1) {
    if (y < 0 || y >= hgt) return;
    x0 = std::max(x0, 0);
    x1 = std::min(x1, w - 1);
    if (x0 > x1) return;
    std::int16_t* d = diff.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w + 1);
    d[x0] += 1;
    d[x1 + 1] -= 1;
  };

  for (std::size_t j = 0; j < ws.outer.size(); ++j) {
    const auto runs = runs_of(ws.outer[j]);
    std::vector<std::vector<std::pair<int, int>>> by_row(static_cast<std::size_t>(hgt));
    for (const auto& r : runs) by_row[static_cast<std::size_t>(r.y)].push_back({r.x0, r.x1});
    const int gy_lim = ws.dim == 2 ? nmax : 0;
    for (int gy = -gy_lim; gy <= gy_lim; ++gy)
      for (int gx = -nmax; gx <= nmax; ++gx) {
        const double sx = gx * ifs.lattice / h;
        const double sy = gy * ifs.lattice / h;
        const int mx = static_cast<int>(std::floor(sx));
        const int my = static_cast<int>(std::floor(sy));
        if (mx <= -w - 1 || mx >= w || my <= -hgt - 1 || my >= hgt) continue;
        // Translated cover: each source pixel touches offsets {m, m+1} per axis.
        for (int y = 0; y < hgt; ++y) {
          std::vector<std::pair<int, int>> merged;
          const int src_rows[2] = {y - my, y - my - 1};
          const int nrows = ws.dim == 2 ? 2 : 1;
          for (int k = 0; k < nrows; ++k) {
            const int sr = src_rows[k];
            if (sr < 0 || sr >= hgt) continue;
            for (const auto& seg : by_row[static_cast<std::size_t>(sr)]) merged.push_back({seg.first + mx, seg.second + mx + 1});
          }
          if (merged.empty()) continue;
          std::sort(merged.begin(), merged.end());
          int a = merged[0].first, b = merged[0].second;
          for (std::size_t k = 1; k < merged.size(); ++k) {
            if (merged[k].first <= b + 1) {
              b = std::max(b, merged[k].second);
            } else {
              add(y, a, b);
              a = merged[k].first;
              b = merged[k].second;
            }
          }
          add(y, a, b);
        }
      }
  }
  std::vector<std::int16_t> total(static_cast<std::size_t>(w) * static_cast<std::size_t>(hgt));
  int m = std::numeric_limits<int>::max();
  for (int y = 0; y < hgt; ++y) {
    std::int16_t run = 0;
    const std::int16_t* d = diff.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w + 1);
    for (int x = 0; x < w; ++x) {
      run = static_cast<std::int16_t>(run + d[x]);
      total[static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)] = run;
      m = std::min<int>(m, run);
    }
  }
  ws.multiplicity = m;
  ws.inner.assign(ws.outer.size(), Bitmap(w, hgt));
  for (std::size_t i = 0; i < ws.outer.size(); ++i) {
    const auto& o = ws.outer[i].data();
    auto& in = ws.inner[i].data();
    // Covered at least m times everywhere; if no more than m pieces touch a pixel
    // of W_i's cover, the other m - 1 cannot cover it alone.
    for (std::size_t p = 0; p < o.size(); ++p) in[p] = (o[p] && total[p] <= m) ? 1 : 0;
  }
  return m;
}

Bitmap box_cover(const WindowSet& ws, const RealVec& lo, const RealVec& hi) {
  const int w = ws.resolution;
  const int hgt = ws.dim == 2 ? w : 1;
  Bitmap b(w, hgt);
  auto range = [&](double a, double c, int n, int& i0, int& i1) {
    i0 = std::clamp(static_cast<int>(std::floor(ws.to_pixel(a) - kEps)), 0, n - 1);
    i1 = std::clamp(static_cast<int>(std::floor(ws.to_pixel(c) + kEps)), 0, n - 1);
  };
  int x0, x1, y0 = 0, y1 = 0;
  range(lo[0], hi[0], w, x0, x1);
  if (ws.dim == 2) range(lo[1], hi[1], hgt, y0, y1);
  for (int y = y0; y <= y1; ++y)
    for (int x = x0; x <= x1; ++x) b.set(x, y);
  return b;
}

}  // namespace goldentile
