#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slocc/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sLOCC entanglement and conditional teleportation simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  std::int64_t trials = -1;
  bool have_seed = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON configuration file");
    cmd->add_option("--seed", seed, "random seed")->each([&](const std::string&) {
      have_seed = true;
    });
    cmd->add_option("--trials", trials, "Monte Carlo trial count");
    cmd->add_option("--output", output, "output file (default: stdout)");
    cmd->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  add_common(app.add_subcommand("entanglement",
                                "operational entanglement sweep (CSV/JSON rows)"));
  add_common(app.add_subcommand("teleport",
                                "conditional teleportation report (JSON)"));
  add_common(app.add_subcommand("compare-distinguishable",
                                "labeled-pair baseline decomposition"));
  add_common(app.add_subcommand("oracle-check",
                                "randomized equivalence suite against the "
                                "brute-force tensor oracle"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : slocc::kExitUsage;
  }

  try {
    slocc::RunConfig config = config_path.empty()
                                  ? slocc::RunConfig{}
                                  : slocc::RunConfig::from_file(config_path);
    if (have_seed) config.seed = seed;
    if (trials >= 0) config.trials = trials;
    if (!output.empty()) config.output = output;
    if (!format.empty()) config.format = format;
    const std::string command = app.get_subcommands().front()->get_name();
    return slocc::run_command(command, config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return slocc::kExitUsage;
  }
}
