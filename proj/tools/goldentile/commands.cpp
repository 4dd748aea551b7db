#include "commands.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "goldentile/diffraction.hpp"
#include "goldentile/formats.hpp"
#include "goldentile/parallel.hpp"
#include "goldentile/windows.hpp"
#include "images.hpp"

namespace goldentile::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kMaxPatchTiles = 1e7;

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

void write_json_file(const std::string& path, const json& j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
}

CVector parse_weights(const std::string& text, int n) {
  CVector w;
  if (text.empty()) return CVector(static_cast<std::size_t>(n), cplx(1.0, 0.0));
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw std::invalid_argument("--weights: cannot parse '" + item + "'");
    w.emplace_back(v, 0.0);
  }
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("--weights: expected " + std::to_string(n) + " values, got " + std::to_string(w.size()));
  return w;
}

json vec_json(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json index_json(const FourierIndex& k) {
  json a = json::array();
  for (int i = 0; i < k.dim; ++i) a.push_back(json::array({k.axis[i].p, k.axis[i].q}));
  return a;
}

std::string index_text(const FourierIndex& k) {
  std::string s = "(";
  for (int i = 0; i < k.dim; ++i) {
    if (i) s += "; ";
    s += std::to_string(k.axis[i].p) + "," + std::to_string(k.axis[i].q);
  }
  return s + ")";
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Exact tile counts of the n-th supertile, in floating point to detect huge patches.
double supertile_count(const InflationRule& rule, int steps, int seed_tile) {
  const IntMatrix m = substitution_matrix(rule);
  std::vector<double> v(static_cast<std::size_t>(rule.size()), 0.0);
  v[static_cast<std::size_t>(seed_tile)] = 1.0;
  for (int s = 0; s < steps; ++s) {
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) w[i] += static_cast<double>(m[i][j]) * v[j];
    v = std::move(w);
  }
  return std::accumulate(v.begin(), v.end(), 0.0);
}

int largest_tile(const InflationRule& rule) {
  int best = 0;
  for (int i = 1; i < rule.size(); ++i)
    if (tile_volume(rule.tiles[static_cast<std::size_t>(i)]) > tile_volume(rule.tiles[static_cast<std::size_t>(best)])) best = i;
  return best;
}

struct WindowReport {
  WindowSet ws;
  std::vector<AreaBounds> areas;
  std::vector<double> exact;
  std::optional<WindowClass> cls;
  std::optional<double> union_dim;
};

json window_json(const InflationRule& rule, const WindowReport& r) {
  json j;
  j["rule"] = rule.name;
  j["resolution"] = r.ws.resolution;
  j["box"] = json::array({r.ws.box.lo, r.ws.box.hi});
  j["multiplicity"] = r.ws.multiplicity;
  std::vector<double> lo, hi;
  for (const auto& a : r.areas) {
    lo.push_back(a.lower);
    hi.push_back(a.upper);
  }
  j["areas_lower"] = vec_json(lo);
  j["areas_upper"] = vec_json(hi);
  j["areas_exact"] = vec_json(r.exact);
  j["class"] = r.cls ? json(to_string(r.cls->tag)) : json(nullptr);
  j["boundary_dim_estimate"] = r.cls && r.cls->boundary_dim ? json(*r.cls->boundary_dim)
                                : r.union_dim                ? json(*r.union_dim)
                                                             : json(nullptr);
  j["slope"] = r.cls && r.cls->slope ? json(*r.cls->slope) : json(nullptr);
  if (r.cls) {
    j["hull_vertices"] = r.cls->hull_vertices;
    j["max_hull_deficit"] = r.cls->max_hull_deficit;
    if (!r.cls->note.empty()) j["note"] = r.cls->note;
  }
  if (rule.dim == 1) {
    // Connected components of each outer raster, in internal-space coordinates.
    json comps = json::array();
    for (const auto& b : r.ws.outer) {
      json list = json::array();
      int x = 0;
      while (x < b.width()) {
        while (x < b.width() && !b.get(x, 0)) ++x;
        if (x == b.width()) break;
        const int s = x;
        while (x < b.width() && b.get(x, 0)) ++x;
        list.push_back(json::array({r.ws.box.lo + s * r.ws.pixel(), r.ws.box.lo + x * r.ws.pixel()}));
      }
      comps.push_back(list);
    }
    j["intervals"] = comps;
  }
  return j;
}

}  // namespace

void validate(const std::string& command, RunConfig& cfg) {
  cfg.threads = resolve_threads(cfg.threads);
  if (!cfg.rule.empty()) (void)rule_from_selector(cfg.rule);  // throws on a bad selector
  if (cfg.out.empty() && command != "oracle") cfg.out = command;  // oracle writes a file only on request
  auto need_power_of_two = [](int r) {
    if (r < 8 || (r & (r - 1)) != 0) throw std::invalid_argument("--res must be a power of two >= 8");
  };
  if (command == "diffract") {
    if (cfg.kmax < 0) cfg.kmax = 2;
    if (cfg.ystarmax < 0) cfg.ystarmax = 40;
    if (cfg.resolution == 0) cfg.resolution = 1024;
    if (cfg.resolution < 16 || cfg.resolution > 16384) throw std::invalid_argument("--res must lie in [16, 16384]");
  } else if (command == "windows") {
    if (cfg.resolution == 0) cfg.resolution = 1024;
    need_power_of_two(cfg.resolution);
  } else if (command == "catalog") {
    if (cfg.resolution == 0) cfg.resolution = 4096;
    need_power_of_two(cfg.resolution);
    if (cfg.resolution < 1024) throw std::invalid_argument("catalog: --res must be at least 1024");
  } else if (command == "random") {
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw std::invalid_argument("--p must lie in [0, 1]");
    if (cfg.kmax < 0) cfg.kmax = 5;
    if (cfg.ystarmax < 0) cfg.ystarmax = 40;
    if (cfg.tiles == 0) cfg.tiles = 1000000;
    if (cfg.weights.empty()) cfg.weights = "1,-1,1";
  } else if (command == "patch") {
    if (cfg.steps < 0 || cfg.steps > 60) throw std::invalid_argument("--steps must lie in [0, 60]");
  } else if (command == "oracle") {
    const auto rule = rule_from_selector(cfg.rule);
    if (cfg.kmax < 0) cfg.kmax = rule.dim == 1 ? 5 : 2;
    if (cfg.ystarmax < 0) cfg.ystarmax = rule.dim == 1 ? 20 : 5;
    if (cfg.tiles == 0) cfg.tiles = 100000;
    if (static_cast<double>(cfg.tiles) > kMaxPatchTiles) throw std::invalid_argument("--tiles must not exceed 1e7");
  }
  if (cfg.kmax > 1e4 || cfg.ystarmax > 1e4) throw std::invalid_argument("--kmax/--ystarmax too large");
}

int cmd_diffract(const RunConfig& cfg) {
  const auto rule = rule_from_selector(cfg.rule);
  const CocycleEvaluator eval(rule);
  const CVector w = parse_weights(cfg.weights, rule.size());
  const auto peaks = diffract(eval, w, enumerate_module(rule.dim, cfg.kmax, cfg.ystarmax), cfg.threads);
  {
    auto os = open_out(cfg.out + ".csv");
    write_peak_csv(os, rule.dim, peaks);
  }
  const std::string images =
      write_image(render_diffraction(rule.dim, peaks, cfg.kmax, cfg.resolution), cfg.out, cfg.png);
  double total = 0;
  for (const auto& pk : peaks) total += pk.intensity;
  const std::size_t top = std::min<std::size_t>(10, peaks.size());
  if (cfg.json) {
    json j;
    j["rule"] = rule.name;
    j["peaks"] = peaks.size();
    j["total_intensity"] = total;
    json t = json::array();
    for (std::size_t i = 0; i < top; ++i)
      t.push_back({{"index", index_json(peaks[i].index)}, {"intensity", peaks[i].intensity}});
    j["top"] = t;
    j["csv"] = cfg.out + ".csv";
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "rule " << rule.name << ": " << peaks.size() << " peaks, total intensity " << format_double(total)
              << "\n";
    std::cout << "index                     k1          k2          intensity\n";
    for (std::size_t i = 0; i < top; ++i) {
      const auto& pk = peaks[i];
      std::printf("%-24s %11.6f %11.6f  %.9g\n", index_text(pk.index).c_str(), pk.k[0], rule.dim == 2 ? pk.k[1] : 0.0,
                  pk.intensity);
    }
    std::cout << "wrote " << cfg.out << ".csv " << images << "\n";
  }
  return 0;
}

int cmd_windows(const RunConfig& cfg) {
  const auto rule = rule_from_selector(cfg.rule);
  SolveOptions opt;
  opt.threads = cfg.threads;
  WindowReport r{solve_windows(window_ifs(rule), cfg.resolution, opt), {}, target_areas(rule), {}, {}};
  r.areas = window_areas(r.ws);
  if (rule.dim == 2 && cfg.resolution >= 1024) r.cls = classify(rule, r.ws);
  if (rule.dim == 2 && !(r.cls && r.cls->boundary_dim)) {
    try {
      r.union_dim = union_boundary_dimension_estimate(r.ws);
    } catch (const std::domain_error&) {
    }
  }
  const json j = window_json(rule, r);
  write_json_file(cfg.out + ".json", j);
  const std::string images = write_image(render_windows(r.ws), cfg.out, cfg.png);
  if (cfg.json) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "rule " << rule.name << " at R=" << cfg.resolution << ", covering multiplicity "
            << r.ws.multiplicity << "\n";
  std::cout << "window  area_lower  area_upper  exact\n";
  for (std::size_t i = 0; i < r.areas.size(); ++i)
    std::printf("%-7zu %10.6f  %10.6f  %.6f\n", i, r.areas[i].lower, r.areas[i].upper, r.exact[i]);
  if (r.cls) {
    std::cout << "class " << to_string(r.cls->tag);
    if (r.cls->slope) std::cout << ", slope " << fmt("%.4f", *r.cls->slope);
    if (r.cls->boundary_dim) std::cout << ", boundary dimension " << fmt("%.4f", *r.cls->boundary_dim);
    std::cout << "\n";
  }
  std::cout << "wrote " << cfg.out << ".json " << images << "\n";
  return 0;
}

int cmd_catalog(const RunConfig& cfg) {
  const Census census = classification_census(cfg.resolution, cfg.threads);
  const std::map<std::string, int> expected = {
      {"original-rectangle", 4}, {"parallelogram", 24}, {"castle", 4}, {"cross", 8}, {"island", 8}};
  json rules = json::array();
  for (const auto& e : census.entries) {
    const auto exact = target_areas(dpv_rule(e.code));
    json r;
    r["code"] = e.code.to_string();
    r["class"] = to_string(e.cls.tag);
    std::vector<double> lo, hi;
    bool contains = true;
    double width = 0;
    for (std::size_t i = 0; i < e.areas.size(); ++i) {
      lo.push_back(e.areas[i].lower);
      hi.push_back(e.areas[i].upper);
      contains = contains && e.areas[i].lower <= exact[i] && exact[i] <= e.areas[i].upper;
      width = std::max(width, e.areas[i].upper - e.areas[i].lower);
    }
    r["areas_lower"] = vec_json(lo);
    r["areas_upper"] = vec_json(hi);
    r["areas_exact"] = vec_json(exact);
    r["bracket_contains_exact"] = contains;
    r["bracket_width"] = width;
    r["hull_vertices"] = e.cls.hull_vertices;
    r["max_hull_deficit"] = e.cls.max_hull_deficit;
    r["slope"] = e.cls.slope ? json(*e.cls.slope) : json(nullptr);
    r["boundary_dim"] = e.cls.boundary_dim ? json(*e.cls.boundary_dim) : json(nullptr);
    rules.push_back(r);
  }
  auto tag_of = [&](const DPVCode& c) {
    for (const auto& e : census.entries)
      if (e.code == c) return to_string(e.cls.tag);
    return std::string("missing");
  };
  json anchors = json::array();
  const std::pair<DPVCode, const char*> anchor_list[] = {
      {{0, 0, 0}, "original-rectangle"}, {{0, 1, 9}, "original-rectangle"}, {{1, 0, 3}, "original-rectangle"},
      {{1, 1, 6}, "original-rectangle"}, {{0, 0, 1}, "parallelogram"},      {{0, 0, 6}, "castle"}};
  bool anchors_ok = true;
  for (const auto& [code, want] : anchor_list) {
    const auto got = tag_of(code);
    anchors_ok = anchors_ok && got == want;
    anchors.push_back({{"code", code.to_string()}, {"expected", want}, {"actual", got}, {"satisfied", got == want}});
  }
  json counts;
  for (const auto& [k, v] : census.counts) counts[k] = v;
  json j;
  j["resolution"] = cfg.resolution;
  j["counts"] = counts;
  j["census_matches"] = census.counts == expected;
  j["anchors_satisfied"] = anchors_ok;
  j["anchors"] = anchors;
  j["ambiguous"] = census.ambiguous;
  j["rules"] = rules;
  write_json_file(cfg.out + ".json", j);
  if (cfg.json) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "code       class               hull  slope     dimension\n";
  for (const auto& e : census.entries)
    std::printf("%-10s %-19s %4d  %-8s  %s\n", e.code.to_string().c_str(), to_string(e.cls.tag).c_str(),
                e.cls.hull_vertices, e.cls.slope ? fmt("%.4f", *e.cls.slope).c_str() : "-",
                e.cls.boundary_dim ? fmt("%.4f", *e.cls.boundary_dim).c_str() : "-");
  std::cout << "census:";
  for (const auto& [k, v] : census.counts) std::cout << ' ' << k << '=' << v;
  std::cout << (census.counts == expected ? " (matches)" : " (MISMATCH)") << "\n";
  std::cout << "anchors " << (anchors_ok ? "satisfied" : "VIOLATED") << "\n";
  for (const auto& a : census.ambiguous) std::cout << "ambiguous: " << a << "\n";
  std::cout << "wrote " << cfg.out << ".json\n";
  return 0;
}

int cmd_random(const RunConfig& cfg) {
  const CVector u = parse_weights(cfg.weights, 3);
  const auto rd = randomized_diffraction(cfg.p, u[0], u[1], u[2], cfg.kmax, cfg.ystarmax, cfg.threads);
  {
    auto os = open_out(cfg.out + "_pp.csv");
    write_peak_csv(os, 1, rd.pp);
  }
  const LabeledChain base = fibonacci_chain(cfg.tiles);
  const auto zs = chain_differences(base, 8.0, 20);
  const auto theo = pair_correlations_theoretical(cfg.p, empirical_pair_correlation(base, zs));
  const auto se = pair_correlation_standard_errors(cfg.p, base, zs);

  std::vector<PairCorrelation> emp(static_cast<std::size_t>(cfg.replicates));
  std::vector<double> extra(static_cast<std::size_t>(cfg.replicates));
  parallel_for(emp.size(), cfg.threads, [&](std::size_t r) {
    const auto chain = randomize_chain(base, cfg.p, replicate_seed(cfg.seed, r));
    emp[r] = empirical_pair_correlation(chain, zs);
    extra[r] = empirical_extra_mass(chain, cfg.p, u[0], u[1], u[2]);
  });
  const double reps = static_cast<double>(cfg.replicates);

  json rows = json::array();
  double worst = 0;
  int within = 0, total = 0;
  for (const auto& [fam, tv] : theo.nu) {
    for (std::size_t zi = 0; zi < zs.size(); ++zi) {
      double mean = 0;
      for (const auto& e : emp) mean += e.nu.at(fam)[zi];
      mean /= reps;
      const double s = se.nu.at(fam)[zi] / std::sqrt(reps);
      const double dev = mean - tv[zi];
      double score = 0;
      if (s > 0) score = dev / s;
      else if (std::abs(dev) > 1e-12) score = INFINITY;
      const bool ok = std::abs(score) <= 3.0;
      within += ok;
      ++total;
      worst = std::max(worst, std::abs(score));
      rows.push_back({{"alpha", fam.first},
                      {"beta", fam.second},
                      {"z", json::array({zs[zi].rational(), zs[zi].irrational()})},
                      {"z_value", zs[zi].value()},
                      {"theory", tv[zi]},
                      {"empirical", mean},
                      {"standard_error", s},
                      {"score", std::isfinite(score) ? json(score) : json("inf")}});
    }
  }
  const double extra_mean = std::accumulate(extra.begin(), extra.end(), 0.0) / reps;
  json cands = json::array();
  std::string selected;
  double best = INFINITY;
  for (const auto& c : rd.candidates) {
    const double rel = c.value != 0 ? std::abs(extra_mean - c.value) / std::abs(c.value)
                                    : (extra_mean == 0 ? 0.0 : INFINITY);
    cands.push_back({{"name", c.name}, {"value", c.value}, {"relative_deviation", std::isfinite(rel) ? json(rel) : json("inf")}});
    if (rel < best) {
      best = rel;
      selected = c.name;
    }
  }
  json j;
  j["p"] = cfg.p;
  j["seed"] = cfg.seed;
  j["replicates"] = cfg.replicates;
  j["tiles"] = base.size();
  j["weights"] = json::array({cplx_json(u[0]), cplx_json(u[1]), cplx_json(u[2])});
  j["ac_density"] = rd.ac_density;
  j["extra_mass_empirical"] = extra_mean;
  j["candidates"] = cands;
  j["selected"] = selected;
  j["selected_within_1pct"] = best <= 0.01;
  j["pair_correlation"] = {{"within_3se", within}, {"total", total}, {"max_abs_score", worst}, {"rows", rows}};
  write_json_file(cfg.out + "_report.json", j);
  if (cfg.json) {
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "randomized Fibonacci chain, p=" << format_double(cfg.p) << ", " << base.size() << " tiles, seed "
            << cfg.seed << ", " << cfg.replicates << " replicate(s)\n";
  std::cout << "absolutely continuous density " << format_double(rd.ac_density) << "\n";
  std::cout << "pair correlations within 3 SE: " << within << "/" << total << " (max |score| "
            << fmt("%.3f", worst) << ")\n";
  std::cout << "extra mass at 0: empirical " << format_double(extra_mean) << "\n";
  for (const auto& c : cands)
    std::cout << "  " << c["name"].get<std::string>() << " = " << format_double(c["value"].get<double>()) << "\n";
  std::cout << "selected: " << (selected.empty() ? "none" : selected) << (best <= 0.01 ? " (within 1%)" : "") << "\n";
  std::cout << "wrote " << cfg.out << "_pp.csv " << cfg.out << "_report.json\n";
  return 0;
}

int cmd_patch(const RunConfig& cfg) {
  const auto rule = rule_from_selector(cfg.rule);
  const int seed_tile = cfg.seed_tile < 0 ? largest_tile(rule) : cfg.seed_tile;
  if (seed_tile >= rule.size())
    throw std::invalid_argument("--tile must lie in [0, " + std::to_string(rule.size() - 1) + "]");
  if (supertile_count(rule, cfg.steps, seed_tile) > kMaxPatchTiles)
    throw std::invalid_argument("patch would exceed 1e7 tiles; reduce --steps");
  const Patch patch = generate_patch(rule, cfg.steps, seed_tile);
  {
    auto os = open_out(cfg.out + ".svg");
    write_patch_svg(os, rule, patch);
  }
  json tiles = json::array();
  std::vector<std::size_t> per_type(static_cast<std::size_t>(rule.size()), 0);
  for (const auto& t : patch.tiles) {
    ++per_type[static_cast<std::size_t>(t.type)];
    json e;
    e["type"] = t.type;
    e["x_a"] = t.anchor[0].rational();
    e["x_b"] = t.anchor[0].irrational();
    if (patch.dim == 2) {
      e["y_a"] = t.anchor[1].rational();
      e["y_b"] = t.anchor[1].irrational();
    }
    tiles.push_back(e);
  }
  json j;
  j["rule"] = rule.name;
  j["steps"] = cfg.steps;
  j["seed_tile"] = seed_tile;
  j["tiles"] = tiles;
  write_json_file(cfg.out + ".json", j);
  if (cfg.json) {
    json s;
    s["rule"] = rule.name;
    s["steps"] = cfg.steps;
    s["tiles"] = patch.tiles.size();
    s["per_type"] = per_type;
    std::cout << s.dump(2) << '\n';
    return 0;
  }
  std::cout << "rule " << rule.name << ", " << cfg.steps << " steps from tile " << seed_tile << ": "
            << patch.tiles.size() << " tiles (per type";
  for (auto c : per_type) std::cout << ' ' << c;
  std::cout << ")\nwrote " << cfg.out << ".svg " << cfg.out << ".json\n";
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  const auto rule = rule_from_selector(cfg.rule);
  const CocycleEvaluator eval(rule);
  const CVector w = parse_weights(cfg.weights, rule.size());
  const auto peaks = diffract(eval, w, enumerate_module(rule.dim, cfg.kmax, cfg.ystarmax), cfg.threads);
  const bool closed = rule.name == "fibonacci1d";

  // Patch: the largest supertile, inflated until it covers the region [0, L)^d.
  const int seed = largest_tile(rule);
  const double L = std::pow(static_cast<double>(cfg.tiles) / eval.density(), 1.0 / rule.dim);
  int steps = 0;
  while (std::pow(kTau, steps + 1) < L) ++steps;
  if (supertile_count(rule, steps, seed) > 4 * kMaxPatchTiles) throw std::invalid_argument("--tiles too large");
  const Patch patch = generate_patch(rule, steps, seed);
  const PointCloud cloud = to_cloud(patch, rule.size());
  Region region;
  if (rule.dim == 1) {
    // The first `tiles` points, ending at the start of the next tile.
    std::vector<double> xs(cloud.x);
    std::sort(xs.begin(), xs.end());
    const std::size_t n = std::min(cfg.tiles, xs.size() - 1);
    region.lo = {0.0, 0.0};
    region.hi = {0.5 * (xs[n - 1] + xs[n]), 0.0};
  } else {
    region.lo = {0.0, 0.0};
    region.hi = {L, L};
  }
  std::size_t inside = 0;
  for (std::size_t i = 0; i < cloud.type.size(); ++i) inside += region.contains(&cloud.x[i * static_cast<std::size_t>(rule.dim)], rule.dim);

  // 1D: every module point; 2D: the 20 strongest peaks, relative to the largest amplitude component.
  const std::size_t count = rule.dim == 1 ? peaks.size() : std::min<std::size_t>(20, peaks.size());
  double max_cf = 0, max_patch = 0;
  json rows = json::array();
  std::vector<CVector> sums(count);
  parallel_for(count, cfg.threads, [&](std::size_t i) { sums[i] = patch_amplitude(cloud, region, peaks[i].index, 1); });
  for (std::size_t i = 0; i < count; ++i) {
    const auto& pk = peaks[i];
    json r;
    r["index"] = index_json(pk.index);
    r["cocycle"] = cplx_json(pk.amplitude);
    if (closed) {
      const auto [a, b] = closed_form_1d(pk.index);
      const double d = std::max(std::abs(a - pk.amplitudes[0]), std::abs(b - pk.amplitudes[1]));
      max_cf = std::max(max_cf, d);
      r["closed_form"] = cplx_json(w[0] * a + w[1] * b);
    }
    cplx ps = 0;
    for (std::size_t t = 0; t < w.size(); ++t) ps += w[t] * sums[i][t];
    double dev = max_abs_diff(sums[i], pk.amplitudes);
    if (rule.dim == 2) {
      double scale = 0;
      for (const auto& a : pk.amplitudes) scale = std::max(scale, std::abs(a));
      dev = scale > 0 ? dev / scale : dev;
    }
    max_patch = std::max(max_patch, dev);
    r["patch"] = cplx_json(ps);
    r["patch_deviation"] = dev;
    rows.push_back(r);
  }
  json j;
  j["rule"] = rule.name;
  j["points"] = count;
  j["patch_points"] = inside;
  j["max_closed_form_deviation"] = closed ? json(max_cf) : json(nullptr);
  j["patch_deviation_kind"] = rule.dim == 1 ? "absolute" : "relative";
  j["max_patch_deviation"] = max_patch;
  j["rows"] = rows;
  if (cfg.json) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "rule " << rule.name << ": " << count << " module points, patch sums over " << inside
              << " points\n";
    std::cout << "index                      |A| cocycle    |A| closed     |A| patch      patch dev\n";
    const std::size_t shown = std::min<std::size_t>(count, 20);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& r = rows[i];
      const cplx c(r["cocycle"][0].get<double>(), r["cocycle"][1].get<double>());
      const cplx p(r["patch"][0].get<double>(), r["patch"][1].get<double>());
      std::string cf = "-";
      if (closed) cf = fmt("%.9f", std::abs(cplx(r["closed_form"][0].get<double>(), r["closed_form"][1].get<double>())));
      std::printf("%-26s %-14.9f %-14s %-14.9f %.3e\n", index_text(peaks[i].index).c_str(), std::abs(c), cf.c_str(),
                  std::abs(p), r["patch_deviation"].get<double>());
    }
    if (closed) std::cout << "max |cocycle - closed form| = " << fmt("%.3e", max_cf) << "\n";
    std::cout << "max " << (rule.dim == 1 ? "absolute" : "relative") << " patch deviation = " << fmt("%.3e", max_patch)
              << "\n";
  }
  if (!cfg.out.empty()) write_json_file(cfg.out + ".json", j);
  return 0;
}

}  // namespace goldentile::cli
