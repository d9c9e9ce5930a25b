#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfseg/bench.hpp"
#include "lfseg/models.hpp"

namespace lfseg {

enum class Experiment { single, robustness, sigma_sweep, timing };

// A fully defaulted run description. Exactly one of input_path / scene is
// set. Two-phase inits live in inits, four-phase ones in mrsf_inits.
struct RunConfig {
  ModelKind model = ModelKind::rsf;
  Experiment experiment = Experiment::single;
  ModelParams params;
  std::string input_path;
  std::optional<SyntheticSpec> scene;
  std::vector<NamedInit> inits;
  std::vector<NamedMrsfInit> mrsf_inits;
  std::vector<double> sigmas{3.0, 4.0, 5.0};
  int timing_iters = 50;
  std::string out_dir = ".";
};

// Parses the flat key = value config text (full-line # comments, init lines
// repeatable). Unknown or duplicate keys, malformed values and invalid
// model/experiment combinations throw ConfigError naming the key.
RunConfig parse_config(const std::string& text);

// Every parameter after defaulting, one key = value per line, in config
// syntax; a run is reproducible from this dump.
std::string print_effective_config(const RunConfig& config);

// Executes the configured experiment and writes mask_NNN.pgm, overlay_NNN.pgm,
// energy_NNN.csv and results.csv into out_dir. Throws on I/O problems and on
// divergence of single/timing runs; suite rows record their errors in the
// results table instead.
void execute(const RunConfig& config);

}  // namespace lfseg
