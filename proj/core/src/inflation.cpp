#include "goldentile/inflation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace goldentile {

namespace {

const GoldenNumber kZero{0, 0};
const GoldenNumber kOne{1, 0};
const GoldenNumber kTauG = GoldenNumber::tau();

Displacements empty_displacements(int n) {
  return Displacements(static_cast<std::size_t>(n), std::vector<std::vector<GoldenVec>>(static_cast<std::size_t>(n)));
}

std::vector<GoldenVec>& cell(Displacements& T, int i, int j) {
  return T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

InflationRule fibonacci_rule() {
  InflationRule r;
  r.name = "fibonacci1d";
  r.dim = 1;
  r.tiles = {{0, GoldenVec{kTauG}}, {1, GoldenVec{kOne}}};
  r.T = empty_displacements(2);
  cell(r.T, 0, 0).push_back(GoldenVec{kZero});  // a -> a b
  cell(r.T, 1, 0).push_back(GoldenVec{kTauG});
  cell(r.T, 0, 1).push_back(GoldenVec{kZero});  // b -> a
  return r;
}

// Letters a, a-bar, b, b-bar: a -> ab, a-bar -> a-bar b-bar, b -> a-bar, b-bar -> a.
InflationRule twisted_rule() {
  InflationRule r;
  r.name = "twisted4";
  r.dim = 1;
  r.tiles = {{0, GoldenVec{kTauG}}, {1, GoldenVec{kTauG}}, {2, GoldenVec{kOne}}, {3, GoldenVec{kOne}}};
  r.T = empty_displacements(4);
  cell(r.T, 0, 0).push_back(GoldenVec{kZero});
  cell(r.T, 2, 0).push_back(GoldenVec{kTauG});
  cell(r.T, 1, 1).push_back(GoldenVec{kZero});
  cell(r.T, 3, 1).push_back(GoldenVec{kTauG});
  cell(r.T, 1, 2).push_back(GoldenVec{kZero});
  cell(r.T, 0, 3).push_back(GoldenVec{kZero});
  return r;
}

std::vector<Prototile> square_tiles() {
  return {{0, GoldenVec{kOne, kOne}},
          {1, GoldenVec{kTauG, kOne}},
          {2, GoldenVec{kOne, kTauG}},
          {3, GoldenVec{kTauG, kTauG}}};
}

std::vector<std::vector<bool>> bool_mul(const std::vector<std::vector<bool>>& a,
                                        const std::vector<std::vector<bool>>& b) {
  const std::size_t n = a.size();
  std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (b[k][j]) c[i][j] = true;
  return c;
}

// Power iteration for a nonnegative primitive matrix; returns lambda and a
// positive eigenvector with unit coordinate sum.
std::pair<double, std::vector<double>> perron_vector(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double lambda = 0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) y[i] += m[i][j] * x[j];
    double s = 0;
    for (double t : y) s += t;
    lambda = s;  // sum(x) == 1
    double diff = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= s;
      diff = std::max(diff, std::abs(y[i] - x[i]));
    }
    x = y;
    if (diff < 1e-16 && iter > 10) break;
  }
  // Rayleigh-type refinement of lambda from the converged vector.
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double mi = 0;
    for (std::size_t j = 0; j < n; ++j) mi += m[i][j] * x[j];
    num += mi * x[i];
    den += x[i] * x[i];
  }
  lambda = num / den;
  return {lambda, x};
}

}  // namespace

std::string DPVCode::to_string() const {
  std::ostringstream os;
  os << "(" << i1 << "," << i2 << "," << i3 << ")";
  return os.str();
}

std::vector<DPVCode> all_dpv_codes() {
  std::vector<DPVCode> out;
  for (int i1 = 0; i1 < 2; ++i1)
    for (int i2 = 0; i2 < 2; ++i2)
      for (int i3 = 0; i3 < 12; ++i3) out.push_back({i1, i2, i3});
  return out;
}

InflationRule product_rule(const InflationRule& x, const InflationRule& y) {
  if (x.dim != 1 || y.dim != 1 || x.size() != 2 || y.size() != 2)
    throw std::invalid_argument("product_rule: needs two 1D two-letter rules");
  auto id = [](int ix, int iy) { return (1 - ix) + 2 * (1 - iy); };
  InflationRule r;
  r.name = "square00x";
  r.dim = 2;
  r.tiles.resize(4);
  for (int ix = 0; ix < 2; ++ix)
    for (int iy = 0; iy < 2; ++iy) {
      const int k = id(ix, iy);
      r.tiles[static_cast<std::size_t>(k)] = {k, GoldenVec{x.tiles[static_cast<std::size_t>(ix)].extent[0],
                                                          y.tiles[static_cast<std::size_t>(iy)].extent[0]}};
    }
  r.T = empty_displacements(4);
  for (int ix = 0; ix < 2; ++ix)
    for (int iy = 0; iy < 2; ++iy)
      for (int jx = 0; jx < 2; ++jx)
        for (int jy = 0; jy < 2; ++jy)
          for (const auto& tx : x.T[static_cast<std::size_t>(ix)][static_cast<std::size_t>(jx)])
            for (const auto& ty : y.T[static_cast<std::size_t>(iy)][static_cast<std::size_t>(jy)])
              cell(r.T, id(ix, iy), id(jx, jy)).push_back(GoldenVec{tx[0], ty[0]});
  return r;
}

InflationRule builtin_rule(std::string_view name) {
  if (name == "fibonacci1d" || name == "fib1d") return fibonacci_rule();
  if (name == "twisted4") return twisted_rule();
  if (name == "square00x") {
    const auto f = fibonacci_rule();
    return product_rule(f, f);
  }
  throw std::invalid_argument("unknown rule name '" + std::string(name) + "'");
}

InflationRule dpv_rule(const DPVCode& code) {
  if (!code.valid()) throw std::invalid_argument("DPV code out of range: " + code.to_string());
  InflationRule r;
  r.name = "dpv" + code.to_string();
  r.dim = 2;
  r.tiles = square_tiles();
  r.T = empty_displacements(4);
  auto put = [&](int type, int column, GoldenNumber x, GoldenNumber y) {
    cell(r.T, type, column).push_back(GoldenVec{x, y});
  };

  put(3, 0, kZero, kZero);

  if (code.i1 == 0) {
    put(3, 1, kZero, kZero);
    put(2, 1, kTauG, kZero);
  } else {
    put(2, 1, kZero, kZero);
    put(3, 1, kOne, kZero);
  }
  if (code.i2 == 0) {
    put(3, 2, kZero, kZero);
    put(1, 2, kZero, kTauG);
  } else {
    put(1, 2, kZero, kZero);
    put(3, 2, kZero, kOne);
  }

  // Big square at corner c of the tau^2 x tau^2 supertile; the remaining
  // L-shape holds one small square and the two strips.
  const int c = code.i3 / 3;
  int s = code.i3 % 3;
  const GoldenNumber bx = (c == 1 || c == 2) ? kOne : kZero;
  const GoldenNumber by = (c >= 2) ? kOne : kZero;
  const GoldenNumber x0 = bx == kZero ? kTauG : kZero;
  const GoldenNumber y0 = by == kZero ? kTauG : kZero;
  put(3, 3, bx, by);
  if (c >= 2 && s > 0) s = 3 - s;
  if (s == 0) {
    put(0, 3, x0, y0);
    put(2, 3, x0, by);
    put(1, 3, bx, y0);
  } else if (s == 1) {  // small square at the far end of the horizontal strip
    const GoldenNumber fx = x0 == kTauG ? kZero : kTauG;
    put(0, 3, fx, y0);
    put(1, 3, fx == kZero ? kOne : kZero, y0);
    put(2, 3, x0, by);
  } else {  // far end of the vertical strip
    const GoldenNumber fy = y0 == kTauG ? kZero : kTauG;
    put(0, 3, x0, fy);
    put(2, 3, x0, fy == kZero ? kOne : kZero);
    put(1, 3, bx, y0);
  }
  return r;
}

DPVCode parse_dpv_code(std::string_view text) {
  DPVCode code{-1, -1, -1};
  int* fields[3] = {&code.i1, &code.i2, &code.i3};
  std::size_t pos = 0;
  for (int f = 0; f < 3; ++f) {
    const std::size_t end = f < 2 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw std::invalid_argument("malformed DPV code '" + std::string(text) + "'");
    const auto part = text.substr(pos, end - pos);
    const auto res = std::from_chars(part.data(), part.data() + part.size(), *fields[f]);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size())
      throw std::invalid_argument("malformed DPV code '" + std::string(text) + "'");
    pos = end + 1;
  }
  if (!code.valid()) throw std::invalid_argument("DPV code out of range '" + std::string(text) + "'");
  return code;
}

InflationRule rule_from_selector(std::string_view selector) {
  if (selector.substr(0, 4) == "dpv:") return dpv_rule(parse_dpv_code(selector.substr(4)));
  return builtin_rule(selector);
}

IntMatrix substitution_matrix(const InflationRule& rule) {
  const auto n = static_cast<std::size_t>(rule.size());
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<std::int64_t>(rule.T[i][j].size());
  return m;
}

bool is_primitive(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return false;
  std::vector<std::vector<bool>> b(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0) return false;
      b[i][j] = m[i][j] > 0;
    }
  auto p = b;
  const std::size_t wielandt = (n - 1) * (n - 1) + 1;
  for (std::size_t k = 1; k <= wielandt; ++k) {
    bool positive = true;
    for (const auto& row : p)
      for (bool x : row) positive = positive && x;
    if (positive) return true;
    p = bool_mul(p, b);
  }
  return false;
}

PFData pf_data(const IntMatrix& m) {
  if (!is_primitive(m)) throw std::domain_error("pf_data: matrix is not primitive");
  const std::size_t n = m.size();
  std::vector<std::vector<double>> md(n, std::vector<double>(n)), mt(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      md[i][j] = static_cast<double>(m[i][j]);
      mt[j][i] = static_cast<double>(m[i][j]);
    }
  auto [lambda, v] = perron_vector(md);
  auto [lambda_t, u] = perron_vector(mt);
  (void)lambda_t;
  double uv = 0;
  for (std::size_t i = 0; i < n; ++i) uv += u[i] * v[i];
  for (auto& x : u) x /= uv;
  return {lambda, u, v};
}

double tile_volume(const Prototile& tile) {
  double v = 1;
  for (int i = 0; i < tile.extent.dim; ++i) v *= tile.extent[i].value();
  return v;
}

double point_density(const InflationRule& rule, const PFData& pf) {
  double mean = 0;
  for (int i = 0; i < rule.size(); ++i) mean += pf.v[static_cast<std::size_t>(i)] * tile_volume(rule.tiles[static_cast<std::size_t>(i)]);
  return 1.0 / mean;
}

Patch generate_patch(const InflationRule& rule, int steps, int seed_tile) {
  if (steps < 0) throw std::invalid_argument("generate_patch: negative step count");
  if (seed_tile < 0 || seed_tile >= rule.size()) throw std::invalid_argument("generate_patch: seed tile out of range");
  Patch patch;
  patch.dim = rule.dim;
  patch.tiles.push_back({seed_tile, GoldenVec::zero(rule.dim)});
  for (int s = 0; s < steps; ++s) {
    std::vector<PatchTile> next;
    for (const auto& t : patch.tiles) {
      const GoldenVec base = t.anchor.scaled(rule.factor);
      for (int i = 0; i < rule.size(); ++i)
        for (const auto& d : rule.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(t.type)])
          next.push_back({i, base + d});
    }
    patch.tiles = std::move(next);
  }
  return patch;
}

StoneReport verify_stone_inflation(const InflationRule& rule) {
  const int n = rule.size();
  const int d = rule.dim;
  auto fail = [](int column, const std::string& msg) { return StoneReport{false, column, msg}; };
  for (int j = 0; j < n; ++j) {
    const GoldenVec big = rule.tiles[static_cast<std::size_t>(j)].extent.scaled(rule.factor);
    struct Box {
      int type;
      GoldenVec lo, hi;
    };
    std::vector<Box> boxes;
    for (int i = 0; i < n; ++i)
      for (const auto& t : rule.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        boxes.push_back({i, t, t + rule.tiles[static_cast<std::size_t>(i)].extent});
    GoldenNumber area_sum{0, 0};
    for (const auto& b : boxes) {
      for (int a = 0; a < d; ++a)
        if (b.lo[a].sign() < 0 || (big[a] - b.hi[a]).sign() < 0) {
          std::ostringstream os;
          os << "tile " << b.type << " at " << b.lo << " leaves inflated tile " << j;
          return fail(j, os.str());
        }
      GoldenNumber area{1, 0};
      for (int a = 0; a < d; ++a) area *= b.hi[a] - b.lo[a];
      area_sum += area;
    }
    for (std::size_t p = 0; p < boxes.size(); ++p)
      for (std::size_t q = p + 1; q < boxes.size(); ++q) {
        bool overlap = true;
        for (int a = 0; a < d; ++a)
          overlap = overlap && boxes[p].lo[a] < boxes[q].hi[a] && boxes[q].lo[a] < boxes[p].hi[a];
        if (overlap) {
          std::ostringstream os;
          os << "overlap in inflated tile " << j << ": tile " << boxes[p].type << " at " << boxes[p].lo
             << " and tile " << boxes[q].type << " at " << boxes[q].lo;
          return fail(j, os.str());
        }
      }
    GoldenNumber target{1, 0};
    for (int a = 0; a < d; ++a) target *= big[a];
    if (!(area_sum == target)) {
      std::ostringstream os;
      os << "inflated tile " << j << " not covered: area " << area_sum << " vs " << target;
      return fail(j, os.str());
    }
  }
  return {};
}

InflationRule reflect(const InflationRule& rule, bool flip_x, bool flip_y) {
  InflationRule r = rule;
  r.name = rule.name + (flip_x ? "|x" : "") + (flip_y ? "|y" : "");
  const bool flip[2] = {flip_x, flip_y};
  for (int i = 0; i < rule.size(); ++i)
    for (int j = 0; j < rule.size(); ++j)
      for (auto& t : cell(r.T, i, j)) {
        const GoldenVec big = rule.tiles[static_cast<std::size_t>(j)].extent.scaled(rule.factor);
        const GoldenVec& e = rule.tiles[static_cast<std::size_t>(i)].extent;
        for (int a = 0; a < rule.dim; ++a)
          if (flip[a]) t[a] = big[a] - t[a] - e[a];
      }
  return r;
}

InflationRule transpose_rule(const InflationRule& rule) {
  if (rule.dim != 2 || rule.size() != 4) throw std::invalid_argument("transpose_rule: needs a 2D four-tile rule");
  const int perm[4] = {0, 2, 1, 3};
  InflationRule r = rule;
  r.name = rule.name + "|T";
  r.T = empty_displacements(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (const auto& t : rule.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
        cell(r.T, perm[i], perm[j]).push_back(GoldenVec{t[1], t[0]});
  return r;
}

bool same_displacements(const InflationRule& a, const InflationRule& b) {
  if (a.dim != b.dim || a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j) {
      auto x = a.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      auto y = b.T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      std::sort(x.begin(), x.end());
      std::sort(y.begin(), y.end());
      if (x != y) return false;
    }
  return true;
}

}  // namespace goldentile
