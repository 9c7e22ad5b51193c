#pragma once
// Run configuration for the ccrheat CLI. Values arrive as strings (flags or
// `key = value` lines of a config file, one [section] per subcommand) and are
// checked by validate() before anything is computed.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccrheat/fock.hpp"

namespace ccrheat::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw option text; defaults depend on the subcommand.
struct RawConfig {
  std::string truncation;
  std::string grid;         // "L,M"
  std::string times;        // "a,b,c"
  std::string delta;
  std::string epsilons;     // "e1,e2"
  std::string seed;
  std::string trials;
  std::string probes;       // "fock:0,coherent:1.5"
  std::string probe_times;  // "0,1,2"
  std::string mc_samples;
};

RawConfig defaults_for(const std::string& subcommand);

struct Probe {
  std::string label;
  DensityOperator state;
};

struct RunConfig {
  std::string subcommand;
  int truncation = 0;
  double grid_half_width = 0.0;
  int grid_points = 0;
  std::vector<double> times;
  double delta = 0.0;
  std::vector<double> epsilons;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::string> probe_specs;
  std::vector<Probe> probes;
  std::vector<double> probe_times;
  int mc_samples = 0;
};

// Parses and checks every field against the preconditions of the checks the
// subcommand runs. Throws ConfigError with a message naming the field.
RunConfig validate(const std::string& subcommand, const RawConfig& raw);

std::vector<double> parse_list(const std::string& field, const std::string& text);

}  // namespace ccrheat::cli
