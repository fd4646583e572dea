//
// Copyright 2026 The dpssp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Command-line entry point:
//   dpssp run <config.yaml>
//   dpssp fit <results.csv> --x n --y mean [--where kind=strong ...]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dpssp/cli/config.h"
#include "dpssp/cli/experiment.h"

namespace {

int Run(const std::string& config_path) {
  absl::StatusOr<dpssp::ExperimentConfig> config =
      dpssp::LoadExperimentConfig(config_path);
  if (!config.ok()) {
    std::cerr << config.status().message() << "\n";
    return 2;
  }
  std::string output_dir = config->output_dir;
  if (const char* env = std::getenv("DPSSP_OUTPUT_DIR"); env && *env) {
    output_dir = env;
  }
  absl::StatusOr<std::vector<dpssp::ResultRow>> rows =
      dpssp::RunExperiment(*config);
  if (!rows.ok()) {
    std::cerr << rows.status() << "\n";
    return 1;
  }
  if (absl::Status s = dpssp::WriteReport(*config, *rows, output_dir); !s.ok()) {
    std::cerr << s << "\n";
    return 1;
  }
  int failed = 0;
  for (const dpssp::ResultRow& row : *rows) {
    if (!row.error.empty()) {
      ++failed;
      std::cerr << row.algorithm << " n=" << row.n << " " << row.kind << ": "
                << row.error << "\n";
    }
  }
  std::cout << "wrote " << rows->size() << " rows to " << output_dir
            << "/results.csv\n";
  return failed == 0 ? 0 : 1;
}

int Fit(const std::string& csv, const std::string& x, const std::string& y,
        const std::vector<std::string>& where) {
  absl::StatusOr<dpssp::RateFit> fit = dpssp::FitRateFromCsv(csv, x, y, where);
  if (!fit.ok()) {
    std::cerr << fit.status().message() << "\n";
    return 1;
  }
  std::cout.precision(10);
  std::cout << "slope " << fit->slope << "\nintercept " << fit->intercept
            << "\nr2 " << fit->r_squared << "\npoints " << fit->points << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private stochastic saddle-point experiments"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run an experiment configuration");
  run->add_option("config", config_path, "YAML configuration file")->required();

  std::string csv, x, y;
  std::vector<std::string> where;
  CLI::App* fit = app.add_subcommand("fit", "Fit log y = a + b log x by OLS");
  fit->add_option("csv", csv, "Results CSV")->required();
  fit->add_option("--x", x, "Column used as x")->required();
  fit->add_option("--y", y, "Column used as y")->required();
  fit->add_option("--where", where, "Row filter column=value (repeatable)");

  CLI11_PARSE(app, argc, argv);
  if (run->parsed()) return Run(config_path);
  return Fit(csv, x, y, where);
}
