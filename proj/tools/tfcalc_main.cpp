#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tfcalc/config.hpp"
#include "tfcalc/experiment.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency calculus on finite abelian groups: experiment runner"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "run one experiment config and emit its report");
  run->add_option("config", run_config, "config file")->required()->check(CLI::ExistingFile);

  std::string sweep_dir, sweep_out = "sweep.csv";
  auto* sweep = app.add_subcommand("sweep", "run every config in a directory, aggregate to CSV");
  sweep->add_option("dir", sweep_dir, "directory of config files")
      ->required()
      ->check(CLI::ExistingDirectory);
  sweep->add_option("--out", sweep_out, "aggregated CSV path");

  std::string validate_config;
  auto* val = app.add_subcommand("validate", "parse and validate a config, report problems");
  val->add_option("config", validate_config, "config file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      tfcalc::ExperimentConfig c = tfcalc::parse_config_file(run_config);
      int rc = tfcalc::run_to_files(c);
      if (rc == 0) {
        std::cout << "pass: report written to " << c.report_path << '\n';
      } else if (rc == 1) {
        std::cout << "FAIL: see " << c.report_path << '\n';
      }
      return rc;
    }

    if (*sweep) {
      std::vector<tfcalc::ExperimentConfig> configs;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(sweep_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".cfg")
          files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        configs.push_back(tfcalc::parse_config_file(f.string()));
        tfcalc::validate(configs.back());
      }
      std::string csv = tfcalc::sweep_csv(configs);
      std::ofstream out(sweep_out);
      if (!out) throw std::runtime_error("cannot write " + sweep_out);
      out << csv;
      std::cout << "wrote " << sweep_out << " (" << configs.size() << " configs)\n";
      return 0;
    }

    if (*val) {
      tfcalc::ExperimentConfig c = tfcalc::parse_config_file(validate_config);
      tfcalc::validate(c);
      std::cout << "valid: " << c.name << " (" << tfcalc::to_string(c.kind) << ")\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
