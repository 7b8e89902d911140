// irlc: run scenario studies from a YAML config
#include <CLI11.hpp>
#include <iostream>

#include "irlc/config.hpp"
#include "irlc/errors.hpp"
#include "irlc/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Infrared dressing and lightcone localization studies"};
  app.require_subcommand(1);

  std::string config_path;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "run the studies listed in a config");
  run->add_option("config", config_path, "YAML scenario file")->required();
  run->add_flag("-q,--quiet", quiet, "no progress log");
  auto* list = app.add_subcommand("list-studies", "print the study names in execution order");
  auto* defaults = app.add_subcommand("emit-defaults", "print the bundled default config");

  CLI11_PARSE(app, argc, argv);

  if (*list) {
    for (const auto& n : irlc::config::study_names()) std::cout << n << "\n";
    return 0;
  }
  if (*defaults) {
    std::cout << irlc::config::defaults_yaml();
    return 0;
  }

  irlc::config::ScenarioConfig cfg;
  try {
    cfg = irlc::config::load(config_path);
  } catch (const irlc::ConfigError& e) {
    std::cerr << config_path << ":" << e.line << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return 2;
  }

  const auto report = irlc::runner::run_studies(cfg, quiet ? nullptr : &std::cerr);
  const auto dir = irlc::runner::output_directory(cfg);
  try {
    irlc::runner::write_outputs(report, dir);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  if (!quiet) std::cerr << "report written to " << (dir / "report.json").string() << "\n";
  return report.pass() ? 0 : 1;
}
