#pragma once

// Internal-space windows: the graph-directed IFS W_i = U_j U_t (sigma W_j + t*),
// its certified raster solution, area brackets, shape classification and
// fractal boundary dimensions.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "goldentile/cocycle.hpp"
#include "goldentile/golden.hpp"
#include "goldentile/inflation.hpp"
#include "goldentile/polynomial.hpp"

namespace goldentile {

/// Square raster over [lo, hi]^d; 1D rasters have height 1.
class Bitmap {
 public:
  Bitmap() = default;
  Bitmap(int width, int height, std::uint8_t fill = 0)
      : w_(width), h_(height), px_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return w_; }
  int height() const { return h_; }
  std::uint8_t* row(int y) { return px_.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w_); }
  const std::uint8_t* row(int y) const { return px_.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w_); }
  std::uint8_t get(int x, int y) const { return row(y)[x]; }
  void set(int x, int y, std::uint8_t v = 1) { row(y)[x] = v; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  const std::vector<std::uint8_t>& data() const { return px_; }
  std::vector<std::uint8_t>& data() { return px_; }

  friend bool operator==(const Bitmap& a, const Bitmap& b) {
    return a.w_ == b.w_ && a.h_ == b.h_ && a.px_ == b.px_;
  }

 private:
  int w_ = 0, h_ = 0;
  std::vector<std::uint8_t> px_;
};

Bitmap transpose(const Bitmap& b);
/// Each pixel becomes a factor x factor block.
Bitmap upsample(const Bitmap& b, int factor);
/// Pixel i of the result is set when any pixel of its factor x factor block is.
Bitmap downsample_any(const Bitmap& b, int factor);
/// Symmetric Hausdorff distance between the pixel sets in the Chebyshev metric (pixels).
/// Returns a negative value when exactly one set is empty.
double hausdorff_pixels(const Bitmap& a, const Bitmap& b);

struct Branch {
  int source = 0;
  RealVec shift{};  // t* as reals
  GoldenVec exact;  // t*, exact
};

struct GraphIFS {
  int dim = 1;
  int size = 0;
  double contraction = kSigma;
  std::vector<std::vector<Branch>> branches;  // per target window
  /// Distinct translation generator of the window family, per axis:
  /// star of (long - short) tile side, used for the inner certificate.
  double lattice = kTau;
};

GraphIFS window_ifs(const InflationRule& rule);

struct RasterBox {
  double lo = -2.0;
  double hi = kSqrt5;  // 2 tau - 1
};

/// Checks exactly that sigma [lo, hi] + t* stays inside [-2, 2 tau - 1] on every axis.
bool box_invariant(const GraphIFS& ifs);

struct SolveOptions {
  int threads = 1;
  int coarse = 64;       // first multigrid level
  bool sharpen = true;   // one pass of the four-fold composed IFS
  bool inner = true;     // compute the inner certificate
  bool check_box = true;
  /// A level is done once a step removes at most this fraction of the set
  /// pixels; 0 iterates to the exact raster fixed point.
  double settle = 1e-4;
};

struct WindowSet {
  int dim = 1;
  int resolution = 0;
  RasterBox box;
  std::vector<Bitmap> outer;  // certified supersets
  std::vector<Bitmap> inner;  // certified subsets (empty bitmaps if not computed)
  int multiplicity = 0;       // covering multiplicity of the translated window family
  int iterations = 0;         // Hutchinson steps over all levels

  double pixel() const { return (box.hi - box.lo) / resolution; }
  double pixel_area() const;
  /// Pixel index of coordinate x (may be out of range).
  double to_pixel(double x) const { return (x - box.lo) / pixel(); }
};

WindowSet solve_windows(const GraphIFS& ifs, int resolution, const SolveOptions& opt = {});

/// One outward-rounded Hutchinson step applied to the given rasters.
std::vector<Bitmap> hutchinson_step(const GraphIFS& ifs, const std::vector<Bitmap>& rasters, const RasterBox& box);

/// Inner rasters from the translated-family certificate; returns multiplicity.
int inner_certificate(const GraphIFS& ifs, WindowSet& ws);

struct AreaBounds {
  double lower = 0;
  double upper = 0;
};
std::vector<AreaBounds> window_areas(const WindowSet& ws);

/// Exact window areas tau^d v_i for the unit-density normalisation of the
/// tilings here: ((tau-1)^2, tau-1, tau-1, 1) in 2D, (1, tau-1) in 1D.
std::vector<double> target_areas(const InflationRule& rule);

/// Raster of the axis-parallel box [lo, hi] (outward cover).
Bitmap box_cover(const WindowSet& ws, const RealVec& lo, const RealVec& hi);

enum class WindowTag { OriginalRectangle, Parallelogram, Castle, Cross, Island, Ambiguous };
std::string to_string(WindowTag tag);

struct WindowClass {
  WindowTag tag = WindowTag::Ambiguous;
  int hull_vertices = 0;           // W3 after simplification
  double max_hull_deficit = 0;     // over all windows
  std::optional<double> slope;     // non-axis edge of W3, parallelograms only
  std::optional<double> boundary_dim;  // W3 band estimate, fractals only
  std::string note;                // ambiguity report
};

/// Fraction of pixels whose centres are inside the convex hull of the set
/// but unset, relative to the number of set pixels.
double hull_deficit(const Bitmap& b);
/// Convex hull of pixel centres, simplified by dropping vertices closer than
/// tol pixels to the chord of their neighbours.
std::vector<std::array<double, 2>> simplified_hull(const Bitmap& b, double tol = 2.0);

WindowClass classify(const InflationRule& rule, const WindowSet& ws);

struct CensusEntry {
  DPVCode code;
  WindowClass cls;
  std::vector<AreaBounds> areas;
};
struct Census {
  std::vector<CensusEntry> entries;
  std::map<std::string, int> counts;
  std::vector<std::string> ambiguous;
};
Census classification_census(int resolution = 4096, int threads = 1);

/// Box-counting slope of the outer-minus-inner band over box sides 2^2..2^7 px.
double boundary_dimension_estimate(const WindowSet& ws, int window);
/// Band of the union of all windows.
double union_boundary_dimension_estimate(const WindowSet& ws);
/// Box counts N(2^k) for k in [kmin, kmax] of a bitmap.
std::vector<std::size_t> box_counts(const Bitmap& b, int kmin, int kmax);

Polynomial boundary_polynomial(WindowTag tag);
double hausdorff_dimension(WindowTag tag);
/// Reference value quoted for the tag: 1.875, 1.756, 1.561.
double quoted_dimension(WindowTag tag);

}  // namespace goldentile
