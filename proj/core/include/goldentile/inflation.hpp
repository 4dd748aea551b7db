#pragma once

// Inflation rules with exact displacement sets, their substitution matrices
// and Perron-Frobenius data, and finite patches generated by iteration.

#include <string>
#include <string_view>
#include <vector>

#include "goldentile/golden.hpp"
#include "goldentile/polynomial.hpp"

namespace goldentile {

struct Prototile {
  int id = 0;
  GoldenVec extent;  // side lengths, each 1 or tau
};

/// T[i][j] lists the positions of type-i subtiles inside the inflated
/// type-j tile (lower-left corners, tile j anchored at the origin).
using Displacements = std::vector<std::vector<std::vector<GoldenVec>>>;

struct InflationRule {
  std::string name;
  int dim = 1;
  std::vector<Prototile> tiles;
  GoldenNumber factor = GoldenNumber::tau();
  Displacements T;

  int size() const { return static_cast<int>(tiles.size()); }
};

struct DPVCode {
  int i1 = 0;
  int i2 = 0;
  int i3 = 0;

  bool valid() const { return (i1 == 0 || i1 == 1) && (i2 == 0 || i2 == 1) && i3 >= 0 && i3 < 12; }
  int index() const { return (i1 * 2 + i2) * 12 + i3; }
  std::string to_string() const;  // "(i1,i2,i3)"
  friend bool operator==(const DPVCode&, const DPVCode&) = default;
};

/// All 48 codes in (i1, i2, i3) lexicographic order.
std::vector<DPVCode> all_dpv_codes();

struct PFData {
  double lambda = 0;
  std::vector<double> u;  // left eigenvector, <u|v> = 1
  std::vector<double> v;  // right eigenvector, <1|v> = 1
};

struct PatchTile {
  int type = 0;
  GoldenVec anchor;  // lower-left corner
};

struct Patch {
  int dim = 1;
  std::vector<PatchTile> tiles;
};

struct StoneReport {
  bool ok = true;
  int column = -1;      // inflated prototile where the first violation occurs
  std::string message;  // empty when ok
};

/// "fibonacci1d" (alias "fib1d"), "twisted4" or "square00x".
InflationRule builtin_rule(std::string_view name);
InflationRule dpv_rule(const DPVCode& code);
/// Builtin name or "dpv:i1,i2,i3".
InflationRule rule_from_selector(std::string_view selector);
DPVCode parse_dpv_code(std::string_view text);

/// Direct product of two 1D rules on two letters; tile id = (1 - ix) + 2 (1 - iy),
/// so a 1D rule with long tile 0 and short tile 1 gives 0 = short x short, 3 = long x long.
InflationRule product_rule(const InflationRule& x, const InflationRule& y);

IntMatrix substitution_matrix(const InflationRule& rule);
/// Some power M^k, k <= (N-1)^2 + 1, is strictly positive.
bool is_primitive(const IntMatrix& m);
PFData pf_data(const IntMatrix& m);

double tile_volume(const Prototile& tile);
/// Points per unit volume of the control-point set: 1 / sum_i v_i vol(tile_i).
double point_density(const InflationRule& rule, const PFData& pf);

Patch generate_patch(const InflationRule& rule, int steps, int seed_tile);
StoneReport verify_stone_inflation(const InflationRule& rule);

/// Mirror the rule along the chosen axes and re-anchor at lower-left corners.
InflationRule reflect(const InflationRule& rule, bool flip_x, bool flip_y);
/// Reflection in the main diagonal: swaps the axes and tile types 1 and 2.
InflationRule transpose_rule(const InflationRule& rule);
/// Identical displacement sets (order within a set ignored).
bool same_displacements(const InflationRule& a, const InflationRule& b);

}  // namespace goldentile
