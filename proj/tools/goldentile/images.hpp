#pragma once

#include <string>

#include "goldentile/formats.hpp"

namespace goldentile::cli {

bool png_available();
/// Writes <stem>.ppm, and <stem>.png as well when requested. Returns the written paths.
std::string write_image(const RgbImage& img, const std::string& stem, bool png);

}  // namespace goldentile::cli
