#include "goldentile/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace goldentile {

namespace {

constexpr std::uint8_t kWindowColors[4][3] = {{220, 40, 40}, {235, 200, 30}, {40, 170, 60}, {40, 80, 220}};

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_peak_csv(std::ostream& os, int dim, const std::vector<Peak>& peaks) {
  if (dim == 1)
    os << "p1,q1,k1,kstar1,re_amp,im_amp,intensity\n";
  else
    os << "p1,q1,p2,q2,k1,k2,kstar1,kstar2,re_amp,im_amp,intensity\n";
  for (const auto& pk : peaks) {
    for (int a = 0; a < dim; ++a) os << pk.index.axis[a].p << ',' << pk.index.axis[a].q << ',';
    for (int a = 0; a < dim; ++a) os << format_double(pk.k[static_cast<std::size_t>(a)]) << ',';
    for (int a = 0; a < dim; ++a) os << format_double(pk.kstar[static_cast<std::size_t>(a)]) << ',';
    os << format_double(pk.amplitude.real()) << ',' << format_double(pk.amplitude.imag()) << ','
       << format_double(pk.intensity) << '\n';
  }
}

void RgbImage::put(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  auto* p = &rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3];
  p[0] = r;
  p[1] = g;
  p[2] = b;
}

void RgbImage::blend(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b, double alpha) {
  if (x < 0 || y < 0 || x >= width || y >= height) return;
  auto* p = &rgb[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)) * 3];
  const std::uint8_t c[3] = {r, g, b};
  for (int i = 0; i < 3; ++i) p[i] = static_cast<std::uint8_t>(std::lround((1 - alpha) * p[i] + alpha * c[i]));
}

void write_ppm(std::ostream& os, const RgbImage& img) {
  os << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.rgb.data()), static_cast<std::streamsize>(img.rgb.size()));
}

RgbImage render_diffraction(int dim, const std::vector<Peak>& peaks, double extent, int size, double max_radius) {
  if (size < 16) throw std::invalid_argument("render_diffraction: image too small");
  if (!(extent > 0)) throw std::invalid_argument("render_diffraction: extent must be positive");
  RgbImage img(size, size);
  const double half = 0.5 * size;
  const double scale = half / extent;
  double imax = 0;
  for (const auto& pk : peaks) imax = std::max(imax, pk.intensity);
  if (imax <= 0) return img;
  // Draw small peaks last so they stay visible on top of large ones.
  std::vector<const Peak*> order;
  for (const auto& pk : peaks) order.push_back(&pk);
  std::stable_sort(order.begin(), order.end(), [](const Peak* a, const Peak* b) { return a->intensity > b->intensity; });
  for (const Peak* pk : order) {
    const double kx = pk->k[0], ky = dim == 2 ? pk->k[1] : 0.0;
    if (std::abs(kx) > extent || std::abs(ky) > extent) continue;
    const double r = max_radius * std::sqrt(pk->intensity / imax);  // area proportional to intensity
    if (r < 0.35) continue;
    const double cx = half + kx * scale, cy = half - ky * scale;
    const int x0 = static_cast<int>(std::floor(cx - r - 1)), x1 = static_cast<int>(std::ceil(cx + r + 1));
    const int y0 = static_cast<int>(std::floor(cy - r - 1)), y1 = static_cast<int>(std::ceil(cy + r + 1));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
        const double cover = std::clamp(r + 0.5 - d, 0.0, 1.0);
        if (cover > 0) img.blend(x, y, 0, 0, 0, cover);
      }
  }
  return img;
}

RgbImage render_windows(const WindowSet& ws, int max_size) {
  if (ws.outer.empty()) throw std::invalid_argument("render_windows: no windows");
  int factor = 1;
  while (ws.resolution / factor > max_size) factor *= 2;
  const int n = ws.resolution / factor;
  const int rows = ws.dim == 2 ? n : std::max(8, n / 16);
  RgbImage img(n, rows);
  for (std::size_t w = 0; w < ws.outer.size(); ++w) {
    const Bitmap b = factor > 1 ? downsample_any(ws.outer[w], factor) : ws.outer[w];
    const auto* c = kWindowColors[w % 4];
    for (int y = 0; y < rows; ++y) {
      // 1D windows are stacked as horizontal stripes.
      const int src = ws.dim == 2 ? n - 1 - y : 0;
      if (ws.dim == 1 && static_cast<std::size_t>(y * static_cast<int>(ws.outer.size()) / rows) != w) continue;
      for (int x = 0; x < n; ++x)
        if (b.get(x, src)) img.blend(x, y, c[0], c[1], c[2], ws.dim == 2 ? 0.6 : 1.0);
    }
  }
  const double px = ws.pixel() * factor;
  auto col = [&](double v) { return static_cast<int>(std::floor((v - ws.box.lo) / px)); };
  const int zx = col(0.0);
  for (int y = 0; y < rows; ++y) img.put(zx, y, 0, 0, 0);
  if (ws.dim == 2) {
    const int zy = n - 1 - col(0.0);
    for (int x = 0; x < n; ++x) img.put(x, zy, 0, 0, 0);
    const int a = col(-kTau), b = col(kTau);
    for (int t = a; t <= b; ++t) {
      img.put(t, n - 1 - a, 128, 128, 128);
      img.put(t, n - 1 - b, 128, 128, 128);
      img.put(a, n - 1 - t, 128, 128, 128);
      img.put(b, n - 1 - t, 128, 128, 128);
    }
  } else {
    for (const double v : {-kTau, kTau})
      for (int y = 0; y < rows; ++y) img.put(col(v), y, 128, 128, 128);
  }
  return img;
}

void write_patch_svg(std::ostream& os, const InflationRule& rule, const Patch& patch) {
  double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
  for (const auto& t : patch.tiles) {
    const auto a = t.anchor.value();
    const auto e = rule.tiles[static_cast<std::size_t>(t.type)].extent.value();
    for (int i = 0; i < patch.dim; ++i) {
      lo[i] = std::min(lo[i], a[static_cast<std::size_t>(i)]);
      hi[i] = std::max(hi[i], a[static_cast<std::size_t>(i)] + e[static_cast<std::size_t>(i)]);
    }
  }
  if (patch.dim == 1) {
    lo[1] = 0;
    hi[1] = 1;
  }
  if (patch.tiles.empty()) lo[0] = lo[1] = hi[0] = hi[1] = 0;
  const double stroke = 0.02 * kTau;
  const double w = hi[0] - lo[0], h = hi[1] - lo[1];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(lo[0] - stroke) << ' '
     << format_double(-hi[1] - stroke) << ' ' << format_double(w + 2 * stroke) << ' ' << format_double(h + 2 * stroke)
     << "\">\n";
  static const char* fills[4] = {"#d62828", "#f2c12e", "#2a9d3f", "#2f55d4"};
  for (const auto& t : patch.tiles) {
    const auto a = t.anchor.value();
    const auto e = rule.tiles[static_cast<std::size_t>(t.type)].extent.value();
    const double ey = patch.dim == 2 ? e[1] : 1.0;
    const double ay = patch.dim == 2 ? a[1] : 0.0;
    os << "<rect x=\"" << format_double(a[0]) << "\" y=\"" << format_double(-(ay + ey)) << "\" width=\""
       << format_double(e[0]) << "\" height=\"" << format_double(ey) << "\" fill=\"" << fills[t.type % 4]
       << "\" stroke=\"black\" stroke-width=\"" << format_double(stroke) << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace goldentile
