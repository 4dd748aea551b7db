#pragma once

// Internal Fourier matrix B(y), the internal cocycle
// B^(n)(y) = B(y) B(sigma y) ... B(sigma^(n-1) y), its scaled limit
// C(y) = |c(y)><u| and the Fourier-Bohr amplitudes derived from it.

#include <array>
#include <vector>

#include "goldentile/golden.hpp"
#include "goldentile/inflation.hpp"
#include "goldentile/linalg.hpp"

namespace goldentile {

using RealVec = std::array<double, 2>;  // d-vector; the second entry is unused for d = 1

struct CocycleLimit {
  CVector c;
  int n_used = 0;
  double residual = 0;  // a-priori bound on |c - c_true|_inf
};

class CocycleEvaluator {
 public:
  explicit CocycleEvaluator(const InflationRule& rule);
  CocycleEvaluator(const InflationRule& rule, const PFData& pf);

  int size() const { return n_; }
  int dim() const { return dim_; }
  const PFData& pf() const { return pf_; }
  /// Control-point density of the whole tiling.
  double density() const { return density_; }
  /// max |y| over the windows' bounding box; used in the tail bound.
  double window_radius() const { return window_radius_; }

  CMatrix fourier_matrix(const RealVec& y) const;
  CMatrix cocycle_product(const RealVec& y, int n) const;
  /// Smallest n whose first-order tail bound is below tol.
  int steps_for(const RealVec& y, double tol) const;
  /// c(y) = |sigma|^(dn) B^(n)(y) v, accumulated right to left.
  CocycleLimit limit_C(const RealVec& y, double tol = 1e-9) const;
  /// |sigma|^(dn) B^(n)(y) with n = steps_for(y, tol) + extra, rescaled at every factor.
  CMatrix limit_matrix(const RealVec& y, double tol = 1e-9, int extra = 40) const;
  /// A_i(k) = dens(Lambda) c_i(k*).
  CVector fb_amplitude(const FourierIndex& k, double tol = 1e-11) const;

 private:
  void apply_B(const RealVec& y, CVector& w) const;

  int n_ = 0;
  int dim_ = 1;
  PFData pf_;
  double density_ = 0;
  double window_radius_ = 0;
  // Starred displacements, per (i, j).
  std::vector<std::vector<std::vector<RealVec>>> tstar_;
};

CMatrix fourier_matrix(const InflationRule& rule, const RealVec& y);
CMatrix cocycle_product(const InflationRule& rule, const RealVec& y, int n);
CocycleLimit limit_C(const InflationRule& rule, const RealVec& y, double tol = 1e-9);
CVector fb_amplitude(const InflationRule& rule, const PFData& pf, const FourierIndex& k);

}  // namespace goldentile
