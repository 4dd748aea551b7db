#include "images.hpp"

#include <fstream>
#include <stdexcept>

#ifdef GOLDENTILE_HAVE_PNG
#include <png.h>
#endif

namespace goldentile::cli {

namespace {

#ifdef GOLDENTILE_HAVE_PNG
void write_png(const RgbImage& img, const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("png encoding failed for " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width), static_cast<png_uint_32>(img.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < img.height; ++y)
    png_write_row(png, img.rgb.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) * 3);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}
#endif

}  // namespace

bool png_available() {
#ifdef GOLDENTILE_HAVE_PNG
  return true;
#else
  return false;
#endif
}

std::string write_image(const RgbImage& img, const std::string& stem, bool png) {
  const std::string ppm = stem + ".ppm";
  std::ofstream os(ppm, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + ppm);
  write_ppm(os, img);
  if (!os) throw std::runtime_error("write failed for " + ppm);
  if (!png) return ppm;
#ifdef GOLDENTILE_HAVE_PNG
  write_png(img, stem + ".png");
  return ppm + " " + stem + ".png";
#else
  throw std::runtime_error("--png requested but this build has no libpng");
#endif
}

}  // namespace goldentile::cli
