#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "commands.hpp"

namespace {

using goldentile::cli::RunConfig;

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--threads", cfg.threads, "Worker threads (0: hardware parallelism)")->check(CLI::NonNegativeNumber);
  sub->add_option("--out", cfg.out, "Output path stem");
  sub->add_flag("--json", cfg.json, "Print JSON instead of a table");
}

void add_rule(CLI::App* sub, RunConfig& cfg, bool required = true) {
  auto* opt = sub->add_option("--rule", cfg.rule, "fib1d, twisted4, square00x or dpv:i1,i2,i3");
  if (required) opt->required();
}

void add_spectrum(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--kmax", cfg.kmax, "Bound on |k| per axis");
  sub->add_option("--ystarmax", cfg.ystarmax, "Bound on |k*| per axis");
  sub->add_option("--weights", cfg.weights, "Comma-separated scattering weights, one per tile type");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"goldentile: diffraction, windows and catalog of Fibonacci-type inflation tilings"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* diffract = app.add_subcommand("diffract", "Peak list (CSV) and diffraction image");
  add_rule(diffract, cfg);
  add_spectrum(diffract, cfg);
  diffract->add_option("--res", cfg.resolution, "Image size in pixels");
  diffract->add_flag("--png", cfg.png, "Also write PNG");
  add_common(diffract, cfg);

  auto* windows = app.add_subcommand("windows", "Solve and render the windows of one rule");
  add_rule(windows, cfg);
  windows->add_option("--res", cfg.resolution, "Raster resolution (power of two)");
  windows->add_flag("--png", cfg.png, "Also write PNG");
  add_common(windows, cfg);

  auto* catalog = app.add_subcommand("catalog", "Classify the windows of all 48 direct-product variations");
  catalog->add_option("--res", cfg.resolution, "Raster resolution (power of two)");
  add_common(catalog, cfg);

  auto* random = app.add_subcommand("random", "Randomized Fibonacci chain: theory and Monte Carlo");
  add_spectrum(random, cfg);
  random->add_option("--p", cfg.p, "Probability of keeping an a tile");
  random->add_option("--seed", cfg.seed, "Root seed");
  random->add_option("--replicates", cfg.replicates, "Monte Carlo replicates")->check(CLI::PositiveNumber);
  random->add_option("--tiles", cfg.tiles, "Chain length");
  add_common(random, cfg);

  auto* patch = app.add_subcommand("patch", "Inflated patch as SVG and JSON");
  add_rule(patch, cfg);
  patch->add_option("--steps", cfg.steps, "Inflation steps");
  patch->add_option("--tile", cfg.seed_tile, "Seed prototile (default: the largest)");
  add_common(patch, cfg);

  auto* oracle = app.add_subcommand("oracle", "Three-way amplitude comparison");
  add_rule(oracle, cfg);
  add_spectrum(oracle, cfg);
  oracle->add_option("--tiles", cfg.tiles, "Patch size for the exponential sums");
  add_common(oracle, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "goldentile: error: " << e.what() << '\n';
    return 2;
  }

  namespace cli = goldentile::cli;
  try {
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    cli::validate(name, cfg);
    if (name == "diffract") return cli::cmd_diffract(cfg);
    if (name == "windows") return cli::cmd_windows(cfg);
    if (name == "catalog") return cli::cmd_catalog(cfg);
    if (name == "random") return cli::cmd_random(cfg);
    if (name == "patch") return cli::cmd_patch(cfg);
    return cli::cmd_oracle(cfg);
  } catch (const std::exception& e) {
    std::cerr << "goldentile: error: " << e.what() << '\n';
    return 1;
  }
}
