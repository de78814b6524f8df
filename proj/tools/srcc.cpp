// Command-line front end: run scenarios, print tables, compare CSV series.

#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srcc/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Second-response coupled-cluster propagation on the three-level model"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a scenario config, write CSV series and report.txt");
  run->add_option("config", config_path, "Scenario config file")->required();

  std::string preset = "A";
  std::vector<double> alphas = {0.5, 4.0, 8.0};
  std::string tables_dir = ".";
  auto* tables = app.add_subcommand("tables", "Energy and amplitude tables for a preset");
  tables->add_option("--preset", preset, "A or B")->capture_default_str();
  tables->add_option("--alphas", alphas, "Regularization values in eV")->capture_default_str();
  tables->add_option("--output-dir", tables_dir, "Directory for the table files")->capture_default_str();

  std::string path_a, path_b;
  double gate_pct = 1.0;
  auto* compare = app.add_subcommand("compare", "Relative-RMS comparison of two CSV series");
  compare->add_option("a", path_a, "Test series")->required();
  compare->add_option("b", path_b, "Reference series")->required();
  compare->add_option("--gate", gate_pct, "Gate in percent")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : srcc::cli::kExitError;
  }

  if (*run) return srcc::cli::run_command(config_path);
  if (*tables) return srcc::cli::tables_command(preset, alphas, tables_dir);
  return srcc::cli::compare_command(path_a, path_b, gate_pct);
}
