#include "goldentile/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goldentile/parallel.hpp"

namespace goldentile {

namespace {

std::vector<ModuleCoord> enumerate_axis(double kmax, double ystarmax) {
  if (kmax < 0 || ystarmax < 0) throw std::invalid_argument("enumerate_module: bounds must be nonnegative");
  // k + k* = q and sqrt5 k = p + q tau, so q is bounded by kmax + ystarmax.
  const double slack = 1e-9;
  const auto qmax = static_cast<std::int64_t>(std::floor(kmax + ystarmax + slack));
  const double bk = kSqrt5 * kmax;
  const double by = kSqrt5 * ystarmax;
  std::vector<ModuleCoord> out;
  for (std::int64_t q = -qmax; q <= qmax; ++q) {
    const double qd = static_cast<double>(q);
    const double lo = std::max(-bk - qd * kTau, -by - qd * kSigma);
    const double hi = std::min(bk - qd * kTau, by - qd * kSigma);
    for (auto p = static_cast<std::int64_t>(std::floor(lo - slack)); p <= static_cast<std::int64_t>(std::ceil(hi + slack)); ++p) {
      const ModuleCoord c{p, q};
      if (std::abs(c.value()) <= kmax * (1 + 1e-12) + 1e-12 &&
          std::abs(c.star_value()) <= ystarmax * (1 + 1e-12) + 1e-12)
        out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct Kahan {
  double sum = 0, comp = 0;
  void add(double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

std::vector<FourierIndex> enumerate_module(int d, double kmax, double ystarmax) {
  if (d != 1 && d != 2) throw std::invalid_argument("enumerate_module: dimension must be 1 or 2");
  const auto axis = enumerate_axis(kmax, ystarmax);
  std::vector<FourierIndex> out;
  if (d == 1) {
    for (const auto& c : axis) out.emplace_back(c);
  } else {
    out.reserve(axis.size() * axis.size());
    for (const auto& c1 : axis)
      for (const auto& c2 : axis) out.emplace_back(c1, c2);
  }
  return out;
}

std::vector<Peak> diffract(const CocycleEvaluator& eval, const CVector& weights, const std::vector<FourierIndex>& ks,
                           int threads) {
  if (static_cast<int>(weights.size()) != eval.size())
    throw std::invalid_argument("diffract: expected " + std::to_string(eval.size()) + " weights");
  std::vector<Peak> peaks(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t n) {
    Peak& pk = peaks[n];
    pk.index = ks[n];
    pk.k = ks[n].value();
    pk.kstar = ks[n].star_value();
    pk.amplitudes = eval.fb_amplitude(ks[n]);
    cplx a = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) a += weights[i] * pk.amplitudes[i];
    pk.amplitude = a;
    pk.intensity = std::norm(a);
  });
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& x, const Peak& y) { return x.intensity > y.intensity; });
  return peaks;
}

std::vector<Peak> diffract(const InflationRule& rule, const CVector& weights, double kmax, double ystarmax,
                           int threads) {
  const CocycleEvaluator eval(rule);
  return diffract(eval, weights, enumerate_module(rule.dim, kmax, ystarmax), threads);
}

std::pair<cplx, cplx> closed_form_1d(const FourierIndex& k) {
  const double ys = k.star_value()[0];
  const double s5 = kSqrt5;
  if (ys == 0.0) return {cplx(1.0 / s5, 0.0), cplx((kTau - 1.0) / s5, 0.0)};
  const cplx I(0.0, 1.0);
  auto e = [&](double x) { return std::polar(1.0, 2.0 * kPi * ys * x); };
  if (std::abs(ys) > 1e-4) {
    const cplx den = 2.0 * kPi * I * s5 * ys;
    return {(e(kTau - 1.0) - e(kTau - 2.0)) / den, (e(kTau - 2.0) - e(-1.0)) / den};
  }
  // (e^{i a} - e^{i b}) / (i x) = e^{i (a + b)/2} 2 sin((a - b)/2) / x, free of cancellation.
  auto seg = [&](double lo, double hi) {
    const double half = kPi * ys * (hi - lo);
    return std::polar(1.0, kPi * ys * (hi + lo)) * ((hi - lo) * std::sin(half) / half) / s5;
  };
  return {seg(kTau - 2.0, kTau - 1.0), seg(-1.0, kTau - 2.0)};
}

cplx sinc_amplitude_1d(const FourierIndex& k) {
  const double ys = k.star_value()[0];
  const double x = kPi * kTau * ys;
  const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
  return std::polar(kTau / kSqrt5 * sinc, kPi * ys * (kTau - 2.0));
}

PointCloud to_cloud(const Patch& patch, int types) {
  PointCloud c;
  c.dim = patch.dim;
  c.types = types;
  c.type.reserve(patch.tiles.size());
  c.x.reserve(patch.tiles.size() * static_cast<std::size_t>(patch.dim));
  for (const auto& t : patch.tiles) {
    c.type.push_back(t.type);
    const auto v = t.anchor.value();
    for (int a = 0; a < patch.dim; ++a) c.x.push_back(v[static_cast<std::size_t>(a)]);
  }
  return c;
}

double Region::volume(int dim) const {
  double v = 1;
  for (int a = 0; a < dim; ++a) v *= hi[static_cast<std::size_t>(a)] - lo[static_cast<std::size_t>(a)];
  return v;
}

bool Region::contains(const double* x, int dim) const {
  for (int a = 0; a < dim; ++a)
    if (x[a] < lo[static_cast<std::size_t>(a)] || x[a] >= hi[static_cast<std::size_t>(a)]) return false;
  return true;
}

CVector patch_amplitude(const PointCloud& cloud, const Region& region, const RealVec& k, int threads) {
  const double vol = region.volume(cloud.dim);
  if (!(vol > 0)) throw std::invalid_argument("patch_amplitude: empty region");
  const std::size_t n = cloud.type.size();
  const auto types = static_cast<std::size_t>(cloud.types);
  // Fixed block size keeps the reduction order independent of the worker count.
  constexpr std::size_t kBlock = 1 << 14;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> partial(blocks, std::vector<double>(2 * types, 0.0));
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<Kahan> re(types), im(types);
    const std::size_t hi = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < hi; ++i) {
      const double* x = &cloud.x[i * static_cast<std::size_t>(cloud.dim)];
      if (!region.contains(x, cloud.dim)) continue;
      double kx = 0;
      for (int a = 0; a < cloud.dim; ++a) {
        const double prod = k[static_cast<std::size_t>(a)] * x[a];
        kx += prod - std::floor(prod);
      }
      const double phase = -2.0 * kPi * kx;
      const auto t = static_cast<std::size_t>(cloud.type[i]);
      re[t].add(std::cos(phase));
      im[t].add(std::sin(phase));
    }
    for (std::size_t t = 0; t < types; ++t) {
      partial[b][2 * t] = re[t].sum;
      partial[b][2 * t + 1] = im[t].sum;
    }
  });
  // Pairwise reduction over blocks.
  for (std::size_t stride = 1; stride < blocks; stride *= 2)
    for (std::size_t b = 0; b + stride < blocks; b += 2 * stride)
      for (std::size_t j = 0; j < 2 * types; ++j) partial[b][j] += partial[b + stride][j];
  CVector out(types);
  if (blocks > 0)
    for (std::size_t t = 0; t < types; ++t) out[t] = cplx(partial[0][2 * t], partial[0][2 * t + 1]) / vol;
  return out;
}

CVector patch_amplitude(const PointCloud& cloud, const Region& region, const FourierIndex& k, int threads) {
  return patch_amplitude(cloud, region, k.value(), threads);
}

FourierIndex shear_transpose(const FourierIndex& k) {
  if (k.dim != 2) throw std::invalid_argument("shear_transpose: needs a 2D index");
  return FourierIndex{k.axis[0], k.axis[1] - k.axis[0]};
}

ShearReport shear_check(const std::vector<FourierIndex>& ks, double tol) {
  const CocycleEvaluator plain(dpv_rule({0, 0, 0}));
  const CocycleEvaluator sheared(dpv_rule({0, 0, 1}));
  ShearReport rep;
  for (const auto& k : ks) {
    const FourierIndex sk = shear_transpose(k);
    // S^T k* = (S^T k)* holds because S is integral; check it on the reals too.
    const auto a = k.star_value();
    const auto b = sk.star_value();
    if (std::abs(b[0] - a[0]) > 1e-12 || std::abs(b[1] - (a[1] - a[0])) > 1e-12) rep.indices_integral = false;
    const auto lhs = sheared.fb_amplitude(k, tol);
    const auto rhs = plain.fb_amplitude(sk, tol);
    rep.max_deviation = std::max(rep.max_deviation, max_abs_diff(lhs, rhs));
    ++rep.points;
  }
  return rep;
}

std::vector<Peak> twisted_intensities(const CVector& weights, double kmax, double ystarmax, int threads) {
  return diffract(builtin_rule("twisted4"), weights, kmax, ystarmax, threads);
}

}  // namespace goldentile
