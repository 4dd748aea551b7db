#include "goldentile/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace goldentile {

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability p must lie in [0, 1]");
}

bool is_a_type(std::uint8_t l) { return l == kLabelA || l == kLabelABar; }

const PairKey kFamilies[] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {0, 2}, {2, 0}, {1, 2}, {2, 1}, {2, 2}};

}  // namespace

LabeledChain fibonacci_chain(std::size_t n) {
  const auto rule = builtin_rule("fibonacci1d");
  int steps = 0;
  std::uint64_t f1 = 1, f2 = 1;  // tiles after `steps` inflations of a: F(steps + 2)
  while (f2 < n) {
    const auto f3 = f1 + f2;
    f1 = f2;
    f2 = f3;
    ++steps;
  }
  const Patch patch = generate_patch(rule, steps, 0);
  std::vector<std::size_t> order(patch.tiles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return patch.tiles[x].anchor[0].value() < patch.tiles[y].anchor[0].value();
  });
  LabeledChain chain;
  const std::size_t m = std::min(n, order.size());
  chain.position.reserve(m);
  chain.label.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& t = patch.tiles[order[i]];
    chain.position.push_back(t.anchor[0]);
    chain.label.push_back(t.type == 0 ? kLabelA : kLabelB);
  }
  if (m > 0) {
    const auto& last = patch.tiles[order[m - 1]];
    chain.length = chain.position.back().value() + rule.tiles[static_cast<std::size_t>(last.type)].extent[0].value();
  }
  return chain;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t replicate_seed(std::uint64_t root, std::uint64_t r) {
  std::uint64_t s = root;
  std::uint64_t out = 0;
  for (std::uint64_t i = 0; i <= r; ++i) out = splitmix64(s);
  return out;
}

LabeledChain randomize_chain(const LabeledChain& chain, double p, std::uint64_t seed) {
  check_probability(p);
  const double q = 1.0 - p;
  std::mt19937_64 rng(seed);
  LabeledChain out = chain;
  for (auto& l : out.label) {
    if (!is_a_type(l)) continue;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    l = u < q ? kLabelABar : kLabelA;
  }
  return out;
}

std::vector<GoldenNumber> chain_differences(const LabeledChain& chain, double zmax, std::size_t limit) {
  std::set<GoldenNumber> found;
  found.insert(GoldenNumber{0, 0});
  const std::size_t n = chain.size();
  std::vector<double> xv(n);
  for (std::size_t i = 0; i < n; ++i) xv[i] = chain.position[i].value();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n && xv[j] - xv[i] <= zmax + 1e-9; ++j) {
      const GoldenNumber z = chain.position[j] - chain.position[i];
      found.insert(z);
      found.insert(-z);
    }
  std::vector<GoldenNumber> zs(found.begin(), found.end());
  std::sort(zs.begin(), zs.end(), [](const GoldenNumber& a, const GoldenNumber& b) {
    const double x = std::abs(a.value()), y = std::abs(b.value());
    if (x != y) return x < y;
    return a < b;
  });
  if (zs.size() > limit) zs.resize(limit);
  return zs;
}

PairCorrelation empirical_pair_correlation(const LabeledChain& chain, const std::vector<GoldenNumber>& zs) {
  PairCorrelation pc;
  pc.z = zs;
  const std::size_t nz = zs.size();
  std::unordered_map<GoldenNumber, std::size_t, GoldenNumberHash> index;
  double zmax = 0;
  for (std::size_t i = 0; i < nz; ++i) {
    index[zs[i]] = i;
    zmax = std::max(zmax, std::abs(zs[i].value()));
  }
  std::vector<double> counts(9 * nz, 0.0);  // [alpha][beta][z]
  auto bump = [&](int a, int b, std::size_t zi) { counts[(static_cast<std::size_t>(a) * 3 + static_cast<std::size_t>(b)) * nz + zi] += 1.0; };
  const std::size_t n = chain.size();
  std::vector<double> xv(n);
  for (std::size_t i = 0; i < n; ++i) xv[i] = chain.position[i].value();
  const auto zero = index.find(GoldenNumber{0, 0});
  for (std::size_t i = 0; i < n; ++i) {
    if (zero != index.end()) bump(chain.label[i], chain.label[i], zero->second);
    for (std::size_t j = i + 1; j < n && xv[j] - xv[i] <= zmax + 1e-9; ++j) {
      const GoldenNumber z = chain.position[j] - chain.position[i];
      if (auto it = index.find(z); it != index.end()) bump(chain.label[i], chain.label[j], it->second);
      if (auto it = index.find(-z); it != index.end()) bump(chain.label[j], chain.label[i], it->second);
    }
  }
  const double inv = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
  for (const auto& fam : kFamilies) {
    auto& v = pc.nu[fam];
    v.resize(nz);
    for (std::size_t zi = 0; zi < nz; ++zi)
      v[zi] = counts[(static_cast<std::size_t>(fam.first) * 3 + static_cast<std::size_t>(fam.second)) * nz + zi] * inv;
  }
  return pc;
}

PairCorrelation pair_correlations_theoretical(double p, const PairCorrelation& base) {
  check_probability(p);
  const double q = 1.0 - p;
  PairCorrelation out;
  out.z = base.z;
  const std::size_t nz = base.z.size();
  auto get = [&](int a, int b) -> const std::vector<double>& { return base.nu.at({a, b}); };
  const auto& aa = get(kLabelA, kLabelA);
  const auto& ab = get(kLabelA, kLabelB);
  const auto& ba = get(kLabelB, kLabelA);
  const auto& bb = get(kLabelB, kLabelB);
  for (const auto& fam : kFamilies) out.nu[fam].assign(nz, 0.0);
  for (std::size_t zi = 0; zi < nz; ++zi) {
    const bool origin = base.z[zi] == GoldenNumber{0, 0};
    out.nu[{0, 0}][zi] = origin ? p * aa[zi] : p * p * aa[zi];
    out.nu[{1, 1}][zi] = origin ? q * aa[zi] : q * q * aa[zi];
    out.nu[{0, 1}][zi] = origin ? 0.0 : p * q * aa[zi];
    out.nu[{1, 0}][zi] = origin ? 0.0 : p * q * aa[zi];
    out.nu[{0, 2}][zi] = p * ab[zi];
    out.nu[{2, 0}][zi] = p * ba[zi];
    out.nu[{1, 2}][zi] = q * ab[zi];
    out.nu[{2, 1}][zi] = q * ba[zi];
    out.nu[{2, 2}][zi] = bb[zi];
  }
  return out;
}

PairCorrelation pair_correlation_standard_errors(double p, const LabeledChain& base,
                                                 const std::vector<GoldenNumber>& zs) {
  check_probability(p);
  const double q = 1.0 - p;
  const double prob[3] = {p, q, 1.0};
  const PairCorrelation nu = empirical_pair_correlation(base, zs);
  const double n = static_cast<double>(base.size());
  std::unordered_set<GoldenNumber, GoldenNumberHash> a_positions;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (is_a_type(base.label[i])) a_positions.insert(base.position[i]);

  PairCorrelation se;
  se.z = zs;
  for (const auto& fam : kFamilies) se.nu[fam].assign(zs.size(), 0.0);
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    const GoldenNumber z = zs[zi];
    const bool origin = z == GoldenNumber{0, 0};
    const double n_aa = nu.nu.at({kLabelA, kLabelA})[zi] * n;
    double triples = 0;
    if (!origin)
      for (const auto& x : a_positions)
        if (a_positions.count(x + z) && a_positions.count(x + z + z)) triples += 1;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double pa = prob[a], pb = prob[b];
        double var = 0;
        if (origin) {
          if (a == b) var = n_aa * pa * (1 - pa);
        } else {
          const double shared = a == b ? pa : 0.0;
          var = n_aa * (pa * pb - pa * pa * pb * pb) + 2.0 * triples * (pa * shared * pb - pa * pa * pb * pb);
        }
        se.nu[{a, b}][zi] = std::sqrt(std::max(0.0, var)) / n;
      }
    const double n_ab = nu.nu.at({kLabelA, kLabelB})[zi] * n;
    const double n_ba = nu.nu.at({kLabelB, kLabelA})[zi] * n;
    for (int a = 0; a < 2; ++a) {
      se.nu[{a, 2}][zi] = std::sqrt(n_ab * prob[a] * (1 - prob[a])) / n;
      se.nu[{2, a}][zi] = std::sqrt(n_ba * prob[a] * (1 - prob[a])) / n;
    }
  }
  return se;
}

std::vector<AcCandidate> ac_candidates(double p, cplx u_a, cplx u_abar) {
  check_probability(p);
  const double pq = p * (1.0 - p) * std::norm(u_a - u_abar);
  const double dens = kTau / kSqrt5;
  return {{"dens(Lambda) p q |du|^2", dens * pq},
          {"dens(Lambda) / tau p q |du|^2", dens / kTau * pq},
          {"p q |du|^2", pq}};
}

RandomizedDiffraction randomized_diffraction(double p, cplx u_a, cplx u_abar, cplx u_b, double kmax,
                                             double ystarmax, int threads) {
  check_probability(p);
  const double q = 1.0 - p;
  const auto rule = builtin_rule("fibonacci1d");
  const CocycleEvaluator eval(rule);
  RandomizedDiffraction out;
  out.pp = diffract(eval, {p * u_a + q * u_abar, u_b}, enumerate_module(1, kmax, ystarmax), threads);
  // Extra mass at the origin of the autocorrelation: dens(Lambda_a) p q |u_a - u_abar|^2.
  const double dens_a = eval.density() * eval.pf().v[0];
  out.ac_density = dens_a * p * q * std::norm(u_a - u_abar);
  out.candidates = ac_candidates(p, u_a, u_abar);
  return out;
}

double empirical_extra_mass(const LabeledChain& randomized, double p, cplx u_a, cplx u_abar, cplx u_b) {
  check_probability(p);
  const cplx v_a = p * u_a + (1.0 - p) * u_abar;
  double sum = 0;
  for (auto l : randomized.label) {
    if (l == kLabelA) sum += std::norm(u_a) - std::norm(v_a);
    else if (l == kLabelABar) sum += std::norm(u_abar) - std::norm(v_a);
  }
  (void)u_b;  // b-tiles contribute |u_b|^2 to both terms
  return randomized.length > 0 ? sum / randomized.length : 0.0;
}

}  // namespace goldentile
