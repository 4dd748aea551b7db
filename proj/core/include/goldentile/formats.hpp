#pragma once

// Deterministic text and image output: peak CSV, binary PPM rasters, SVG patches.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "goldentile/diffraction.hpp"
#include "goldentile/inflation.hpp"
#include "goldentile/windows.hpp"

namespace goldentile {

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

void write_peak_csv(std::ostream& os, int dim, const std::vector<Peak>& peaks);

struct RgbImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, top row first
  RgbImage(int w, int h, std::uint8_t fill = 255)
      : width(w), height(h), rgb(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}
  void put(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
  void blend(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b, double alpha);
};

void write_ppm(std::ostream& os, const RgbImage& img);

/// Peaks with |k_i| <= extent drawn as disks of area proportional to intensity;
/// the largest peak gets radius max_radius pixels. 1D peaks sit on a line.
RgbImage render_diffraction(int dim, const std::vector<Peak>& peaks, double extent, int size = 1024,
                            double max_radius = 12.0);

/// Windows 0..3 in red, yellow, green, blue; axes and the box [-tau, tau]^2 in grey.
/// Rasters above max_size pixels are reduced by any-pixel downsampling.
RgbImage render_windows(const WindowSet& ws, int max_size = 1024);

/// Tiles as rectangles (1D tiles as unit-height bars), stroke 0.02 tau.
void write_patch_svg(std::ostream& os, const InflationRule& rule, const Patch& patch);

}  // namespace goldentile
