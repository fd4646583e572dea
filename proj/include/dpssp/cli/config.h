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

#ifndef DPSSP_CLI_CONFIG_H_
#define DPSSP_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/eval/gaps.h"
#include "dpssp/privacy/privacy.h"
#include "dpssp/problems/problems.h"

namespace dpssp {

// How an algorithm's regularization parameter is chosen.
struct LambdaChoice {
  enum class Mode {
    // The closed-form setting for the chosen subroutine.
    kAuto,
    // A fixed value.
    kFixed,
    // scale * L / (B sqrt(n')), raised to the schedule floor L / (B sqrt(n)).
    kScaled,
  };
  Mode mode = Mode::kAuto;
  double value = 0.0;
};

struct AlgorithmConfig {
  // Unique label used in the CSV; defaults to `kind`.
  std::string label;
  // mode | averaged_mode | constant | dataset_mean | regularized_erm |
  // noisy_sgda | local_dp_sgda | recursive_regularization
  std::string kind;
  int chunks = 1;
  std::vector<double> point_w;
  std::vector<double> point_theta;
  LambdaChoice lambda;
  // recursive_regularization: exact | noisy_sgda | output_perturbation
  std::string subroutine = "exact";
  double tolerance = 1e-10;
};

struct ExperimentConfig {
  std::string name;
  ProblemKind problem = ProblemKind::kBilinear;
  int primal_dim = 1;
  int dual_dim = 1;
  ProblemParams params;
  std::vector<AlgorithmConfig> algorithms;
  std::vector<int> n_grid;
  PrivacyBudget budget;
  int trials = 1;
  uint64_t seed = 0;
  std::vector<GapKind> estimators = {GapKind::kStrong};
  std::string output_dir = "dpssp_out";
  // Canonical YAML echo of the accepted configuration.
  std::string echo;
};

// Parses and validates a configuration. Errors are prefixed with
// "<origin>:<line>:" and reject unknown keys.
absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& text, const std::string& origin = "config");

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path);

}  // namespace dpssp

#endif  // DPSSP_CLI_CONFIG_H_
