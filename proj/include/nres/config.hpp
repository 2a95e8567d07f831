#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nres/generator.hpp"
#include "nres/sampler.hpp"

namespace nres {

struct SamplerConfig {
  std::uint64_t seed = 0;
  int count = 0;
  std::vector<double> radial_grid;

  SphereSampler make() const { return SphereSampler(seed, count, radial_grid); }
};

struct ToleranceConfig {
  double solver = 1e-12;
  double ode = 1e-10;
  double check = 1e-9;
};

/// Strictly parsed experiment description. Unknown keys anywhere reject the
/// config; the sampler seed is mandatory (no entropy defaults); every lambda
/// must be positive.
struct ExperimentConfig {
  std::optional<GeneratorMap> generator;
  std::string generator_json;  // canonical serialized form for round-trips
  double a = 0.0;
  std::vector<double> lambdas;
  SamplerConfig sampler;
  ToleranceConfig tolerances;
  std::string out_dir = "out";
  std::string options_json = "{}";  // command-specific block, validated per command

  static ExperimentConfig parse_file(const std::string& path);
  static ExperimentConfig parse_text(const std::string& text);

  std::string serialize() const;
};

}  // namespace nres
