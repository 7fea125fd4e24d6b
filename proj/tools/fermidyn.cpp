#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fermidyn/cli.hpp"
#include "fermidyn/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fermidyn - exact occupation-density dynamics of fermionic mode systems"};
  app.require_subcommand(1);

  std::string config_path;
  std::string csv_path;
  std::string svg_path;
  bool verify = false;
  bool list_conserved = false;

  CLI::App* run_cmd = app.add_subcommand("run", "simulate a configured system");
  run_cmd->add_option("config", config_path, "configuration file")->required();
  run_cmd->add_option("--csv", csv_path, "trajectory CSV path (default: <config>.csv)");
  run_cmd->add_option("--svg", svg_path, "also write an SVG line chart");
  run_cmd->add_flag("--verify", verify, "cross-validate against the ODE oracle");
  run_cmd->add_flag("--list-conserved", list_conserved,
                    "print conserved combinations and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fermidyn::exit_code::config;
  }

  fermidyn::RunConfig config;
  try {
    config = fermidyn::load_config(config_path);
  } catch (const fermidyn::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fermidyn::exit_code::config;
  }
  if (!csv_path.empty()) config.csv_path = csv_path;
  if (!svg_path.empty()) config.svg_path = svg_path;
  config.verify = config.verify || verify;
  config.list_conserved_only = list_conserved;

  return fermidyn::run(config, std::cout, std::cerr);
}
