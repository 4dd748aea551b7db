#pragma once

// Bragg peaks on the Fourier module, weighted intensities, and the
// independent amplitude oracles (closed form, finite-patch sums, shear).
// The randomized Fibonacci chain lives here as well.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goldentile/cocycle.hpp"
#include "goldentile/golden.hpp"
#include "goldentile/inflation.hpp"
#include "goldentile/linalg.hpp"

namespace goldentile {

struct Peak {
  FourierIndex index;
  RealVec k{};
  RealVec kstar{};
  CVector amplitudes;  // A_i(k), one per tile type
  cplx amplitude;      // sum_i u_i A_i(k)
  double intensity = 0;
};

/// Module points with |k| <= kmax and |k*| <= ystarmax on every axis, in
/// lexicographic (p1, q1, p2, q2) order.
std::vector<FourierIndex> enumerate_module(int d, double kmax, double ystarmax);

/// Peaks sorted by descending intensity; ties keep index order.
std::vector<Peak> diffract(const InflationRule& rule, const CVector& weights, double kmax, double ystarmax,
                           int threads = 1);
std::vector<Peak> diffract(const CocycleEvaluator& eval, const CVector& weights,
                           const std::vector<FourierIndex>& ks, int threads = 1);

/// Closed-form 1D Fibonacci amplitudes (A_a, A_b) from the interval windows.
std::pair<cplx, cplx> closed_form_1d(const FourierIndex& k);
/// (tau/sqrt5) exp(pi i k* (tau - 2)) sinc(pi tau k*), the summed 1D amplitude.
cplx sinc_amplitude_1d(const FourierIndex& k);

/// Control points in floating point, split by type, for fast exponential sums.
struct PointCloud {
  int dim = 1;
  int types = 1;
  std::vector<int> type;
  std::vector<double> x;  // dim entries per point
};
PointCloud to_cloud(const Patch& patch, int types);

struct Region {
  RealVec lo{};
  RealVec hi{};
  double volume(int dim) const;
  bool contains(const double* x, int dim) const;
};

/// (1/vol) sum over points in the region of exp(-2 pi i k.x), per type,
/// with compensated summation.
CVector patch_amplitude(const PointCloud& cloud, const Region& region, const RealVec& k, int threads = 1);
CVector patch_amplitude(const PointCloud& cloud, const Region& region, const FourierIndex& k, int threads = 1);

/// S^T with S = [[1, -1], [0, 1]], acting on index pairs.
FourierIndex shear_transpose(const FourierIndex& k);

struct ShearReport {
  std::size_t points = 0;
  double max_deviation = 0;
  bool indices_integral = true;
};
/// Compares A'(k) for rule (0,0,1) with A(S^T k) for rule (0,0,0).
ShearReport shear_check(const std::vector<FourierIndex>& ks, double tol = 1e-11);

/// Pure-point intensities of the four-letter twisted chain, weights in the
/// order (a, a-bar, b, b-bar).
std::vector<Peak> twisted_intensities(const CVector& weights, double kmax, double ystarmax, int threads = 1);

// ---------------------------------------------------------------------------
// Randomized chain.

enum ChainLabel : std::uint8_t { kLabelA = 0, kLabelABar = 1, kLabelB = 2 };

struct LabeledChain {
  std::vector<GoldenNumber> position;
  std::vector<std::uint8_t> label;  // ChainLabel; the unrandomized chain uses only A and B
  double length = 0;                // total length covered by the tiles
  std::size_t size() const { return position.size(); }
};

/// First n tiles of the one-sided Fibonacci fixed point starting with a.
LabeledChain fibonacci_chain(std::size_t n);

/// SplitMix64 step; used to derive replicate seeds from a root seed.
std::uint64_t splitmix64(std::uint64_t& state);
/// Seed of replicate r: the (r+1)-th SplitMix64 output started at root.
std::uint64_t replicate_seed(std::uint64_t root, std::uint64_t r);

/// Each a-tile is independently relabelled a-bar with probability q = 1 - p,
/// drawing one std::mt19937_64 output per a-tile (53-bit uniform < q).
LabeledChain randomize_chain(const LabeledChain& chain, double p, std::uint64_t seed);

using PairKey = std::pair<int, int>;  // (alpha, beta) labels
struct PairCorrelation {
  std::vector<GoldenNumber> z;  // sorted by |z|, then z
  std::map<PairKey, std::vector<double>> nu;  // nu[(alpha, beta)][index into z]
};

/// Distinct differences with |z| <= zmax, ordered by |z| then z.
std::vector<GoldenNumber> chain_differences(const LabeledChain& chain, double zmax, std::size_t limit);

/// Empirical nu_{alpha beta}(z) = #{x in Lambda_alpha : x + z in Lambda_beta} / N.
PairCorrelation empirical_pair_correlation(const LabeledChain& chain, const std::vector<GoldenNumber>& zs);

/// All nine families of nu^(p) from the unrandomized coefficients (labels A, B).
PairCorrelation pair_correlations_theoretical(double p, const PairCorrelation& base);

/// Standard errors of the empirical nu^(p) under independent relabelling, exact
/// up to boundary terms (counts pairs and chained triples in the base chain).
PairCorrelation pair_correlation_standard_errors(double p, const LabeledChain& base,
                                                 const std::vector<GoldenNumber>& zs);

struct AcCandidate {
  std::string name;
  double value = 0;
};

struct RandomizedDiffraction {
  std::vector<Peak> pp;
  double ac_density = 0;
  std::vector<AcCandidate> candidates;  // all three constants, for reporting
};

RandomizedDiffraction randomized_diffraction(double p, cplx u_a, cplx u_abar, cplx u_b, double kmax,
                                             double ystarmax, int threads = 1);
std::vector<AcCandidate> ac_candidates(double p, cplx u_a, cplx u_abar);

/// gamma_emp({0}) - gamma_(v)({0}) per unit length, from a labelled chain and
/// the unrandomized chain it came from.
double empirical_extra_mass(const LabeledChain& randomized, double p, cplx u_a, cplx u_abar, cplx u_b);

}  // namespace goldentile
