#include "goldentile/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace goldentile {

namespace {

// Minimal interval invariant under x -> sigma x + s for the given shifts.
std::pair<double, double> invariant_interval(const std::vector<double>& shifts) {
  const double smin = *std::min_element(shifts.begin(), shifts.end());
  const double smax = *std::max_element(shifts.begin(), shifts.end());
  const double lo = (kSigma * smax + smin) / (1.0 - kSigma * kSigma);
  const double hi = kSigma * lo + smax;
  return {lo, hi};
}

}  // namespace

CocycleEvaluator::CocycleEvaluator(const InflationRule& rule)
    : CocycleEvaluator(rule, pf_data(substitution_matrix(rule))) {}

CocycleEvaluator::CocycleEvaluator(const InflationRule& rule, const PFData& pf)
    : n_(rule.size()), dim_(rule.dim), pf_(pf), density_(point_density(rule, pf)) {
  tstar_.assign(static_cast<std::size_t>(n_), std::vector<std::vector<RealVec>>(static_cast<std::size_t>(n_)));
  std::vector<std::vector<double>> shifts(static_cast<std::size_t>(dim_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (const auto& t : rule.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        const auto s = t.star_value();
        tstar_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(s);
        for (int a = 0; a < dim_; ++a) shifts[static_cast<std::size_t>(a)].push_back(s[static_cast<std::size_t>(a)]);
      }
  for (const auto& s : shifts) {
    const auto [lo, hi] = invariant_interval(s);
    window_radius_ = std::max({window_radius_, std::abs(lo), std::abs(hi)});
  }
}

CMatrix CocycleEvaluator::fourier_matrix(const RealVec& y) const {
  CMatrix b(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      cplx s = 0;
      for (const auto& t : tstar_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        double phase = y[0] * t[0];
        if (dim_ == 2) phase += y[1] * t[1];
        s += std::polar(1.0, 2.0 * kPi * phase);
      }
      b(i, j) = s;
    }
  return b;
}

CMatrix CocycleEvaluator::cocycle_product(const RealVec& y, int n) const {
  if (n < 1) throw std::invalid_argument("cocycle_product: n must be >= 1");
  CMatrix p = CMatrix::identity(n_);
  RealVec ym = y;
  for (int m = 0; m < n; ++m) {
    p = p * fourier_matrix(ym);
    ym = {ym[0] * kSigma, ym[1] * kSigma};
  }
  return p;
}

int CocycleEvaluator::steps_for(const RealVec& y, double tol) const {
  if (!(tol > 0)) throw std::invalid_argument("limit_C: tol must be positive");
  const double ynorm = dim_ == 2 ? std::max(std::abs(y[0]), std::abs(y[1])) : std::abs(y[0]);
  const double vmax = *std::max_element(pf_.v.begin(), pf_.v.end());
  // |c(z) - v|_inf <= vmax 2 pi d rho |z|_inf, carried through |sigma|^(dn) B^(n) without growth.
  const double lead = 2.0 * 2.0 * kPi * dim_ * window_radius_ * vmax * ynorm;
  if (lead <= tol) return 1;
  const int n = static_cast<int>(std::ceil(std::log(lead / tol) / std::log(kTau)));
  return std::max(1, n);
}

void CocycleEvaluator::apply_B(const RealVec& y, CVector& w) const {
  CVector out(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    cplx s = 0;
    for (int j = 0; j < n_; ++j) {
      const auto& ts = tstar_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (ts.empty()) continue;
      cplx e = 0;
      for (const auto& t : ts) {
        double phase = y[0] * t[0];
        if (dim_ == 2) phase += y[1] * t[1];
        e += std::polar(1.0, 2.0 * kPi * phase);
      }
      s += e * w[static_cast<std::size_t>(j)];
    }
    out[static_cast<std::size_t>(i)] = s;
  }
  w = std::move(out);
}

CocycleLimit CocycleEvaluator::limit_C(const RealVec& y, double tol) const {
  const int n = steps_for(y, tol);
  const double scale = std::pow(std::abs(kSigma), dim_);
  std::vector<RealVec> ys(static_cast<std::size_t>(n));
  RealVec ym = y;
  for (int m = 0; m < n; ++m) {
    ys[static_cast<std::size_t>(m)] = ym;
    ym = {ym[0] * kSigma, ym[1] * kSigma};
  }
  CVector w(pf_.v.begin(), pf_.v.end());
  for (int m = n - 1; m >= 0; --m) {
    apply_B(ys[static_cast<std::size_t>(m)], w);
    for (auto& x : w) x *= scale;
  }
  const double ynorm = dim_ == 2 ? std::max(std::abs(y[0]), std::abs(y[1])) : std::abs(y[0]);
  const double vmax = *std::max_element(pf_.v.begin(), pf_.v.end());
  const double bound = 2.0 * kPi * dim_ * window_radius_ * vmax * ynorm * std::pow(std::abs(kSigma), n);
  return {w, n, bound};
}

CMatrix CocycleEvaluator::limit_matrix(const RealVec& y, double tol, int extra) const {
  const int n = steps_for(y, tol) + extra;
  const double scale = std::pow(std::abs(kSigma), dim_);
  CMatrix p = CMatrix::identity(n_);
  RealVec ym = y;
  for (int m = 0; m < n; ++m) {
    CMatrix b = fourier_matrix(ym);
    b *= scale;
    p = p * b;
    ym = {ym[0] * kSigma, ym[1] * kSigma};
  }
  return p;
}

CVector CocycleEvaluator::fb_amplitude(const FourierIndex& k, double tol) const {
  const auto ks = k.star_value();
  auto c = limit_C(ks, tol).c;
  for (auto& x : c) x *= density_;
  return c;
}

CMatrix fourier_matrix(const InflationRule& rule, const RealVec& y) {
  return CocycleEvaluator(rule).fourier_matrix(y);
}

CMatrix cocycle_product(const InflationRule& rule, const RealVec& y, int n) {
  return CocycleEvaluator(rule).cocycle_product(y, n);
}

CocycleLimit limit_C(const InflationRule& rule, const RealVec& y, double tol) {
  return CocycleEvaluator(rule).limit_C(y, tol);
}

CVector fb_amplitude(const InflationRule& rule, const PFData& pf, const FourierIndex& k) {
  return CocycleEvaluator(rule, pf).fb_amplitude(k);
}

}  // namespace goldentile
