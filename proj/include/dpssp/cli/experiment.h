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

#ifndef DPSSP_CLI_EXPERIMENT_H_
#define DPSSP_CLI_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpssp/cli/config.h"
#include "dpssp/core/algorithm.h"
#include "dpssp/problems/problems.h"

namespace dpssp {

inline constexpr char kArtifactVersion[] = "dpssp 1.0.0";

// Column order of the result CSV.
inline constexpr const char* kCsvColumns[] = {
    "problem", "algorithm", "n",      "d",         "epsilon",
    "delta",   "kind",      "mean",   "std_error", "trials",
    "seed",    "gradient_evaluations", "error"};

struct ResultRow {
  std::string problem;
  std::string algorithm;
  int n = 0;
  int d = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::string kind;
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
  uint64_t seed = 0;
  double gradient_evaluations = 0.0;
  // Empty unless the cell failed.
  std::string error;
};

// Builds the algorithm of `config` for datasets of size n.
absl::StatusOr<Algorithm> MakeAlgorithm(const AlgorithmConfig& config,
                                        const ProblemSpec& problem,
                                        const PrivacyBudget& budget, int n);

// Seed of the (algorithm index, n) cell.
uint64_t CellSeed(uint64_t master_seed, int algorithm_index, int n);

// Runs every (algorithm, n) cell. Cell failures become rows with an error
// and do not stop the run. Rows are sorted by (algorithm, n, kind).
absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config);

std::string FormatCsv(const std::vector<ResultRow>& rows);

// Writes results.csv and manifest.json into `output_dir`.
absl::Status WriteReport(const ExperimentConfig& config,
                         const std::vector<ResultRow>& rows,
                         const std::string& output_dir);

// Result of an ordinary least-squares fit of log y on log x.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points = 0;
};

absl::StatusOr<RateFit> FitLogLog(const std::vector<double>& x,
                                  const std::vector<double>& y);

// Reads columns `x` and `y` of a CSV with a header row, keeping rows where
// every `where` filter "column=value" matches, and fits log y on log x.
absl::StatusOr<RateFit> FitRateFromCsv(const std::string& path,
                                       const std::string& x,
                                       const std::string& y,
                                       const std::vector<std::string>& where);

}  // namespace dpssp

#endif  // DPSSP_CLI_EXPERIMENT_H_
