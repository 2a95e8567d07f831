#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nres/commands.hpp"

namespace nres {

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"non-linear resolvent toolkit"};
  app.require_subcommand(1);

  struct SubArgs {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
  };
  std::map<std::string, SubArgs> args;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "accretivity certification, inequality diagnostics, coefficient bounds"},
      {"resolve", "resolvent solves: distortion, pushout, composed accretivity, extension radii"},
      {"bounds", "closed-form bounds table with cross-checks"},
      {"semigroup", "flow integration, squeezing, product formula"},
      {"starlike", "starlikeness order estimates and threshold checks"},
      {"verify", "full invariant suite over the built-in fixture corpus"}};
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    SubArgs& a = args[name];
    sub->add_option("config", a.config, "path to the JSON config")->required();
    sub->add_option("--out-dir", a.out_dir, "override the config's output directory");
    sub->add_option("--seed", a.seed, "override the config's sampler seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  const SubArgs& a = args[name];
  try {
    ExperimentConfig cfg = ExperimentConfig::parse_file(a.config);
    if (!a.out_dir.empty()) cfg.out_dir = a.out_dir;
    if (a.seed) cfg.sampler.seed = *a.seed;
    return run_command(name, cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nres

int main(int argc, char** argv) { return nres::run_cli(argc, argv); }
