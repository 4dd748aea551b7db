#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace goldentile::cli {

struct RunConfig {
  std::string rule;
  double kmax = -1;      // negative: command default
  double ystarmax = -1;
  std::string weights;   // comma-separated reals; empty: all ones
  int resolution = 0;    // 0: command default
  int steps = 6;
  double p = 0.5;
  std::uint64_t seed = 42;
  int replicates = 1;
  std::size_t tiles = 0;  // 0: command default
  int seed_tile = -1;    // -1: largest prototile
  int threads = 0;        // 0: hardware parallelism
  std::string out;
  bool json = false;
  bool png = false;
};

/// Throws std::invalid_argument for inconsistent settings.
void validate(const std::string& command, RunConfig& cfg);

int cmd_diffract(const RunConfig& cfg);
int cmd_windows(const RunConfig& cfg);
int cmd_catalog(const RunConfig& cfg);
int cmd_random(const RunConfig& cfg);
int cmd_patch(const RunConfig& cfg);
int cmd_oracle(const RunConfig& cfg);

}  // namespace goldentile::cli
