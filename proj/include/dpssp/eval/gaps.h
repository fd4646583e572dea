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

#ifndef DPSSP_EVAL_GAPS_H_
#define DPSSP_EVAL_GAPS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/core/algorithm.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"
#include "dpssp/problems/problems.h"

namespace dpssp {

enum class GapKind { kStrong, kWeak, kEmpirical };

std::string GapKindName(GapKind kind);

struct GapReport {
  GapKind kind = GapKind::kStrong;
  double mean = 0.0;
  // Sample standard deviation over sqrt(trials) for per-trial averages; a
  // jackknife estimate for the weak gap. Zero when trials == 1.
  double std_error = 0.0;
  int trials = 0;
  uint64_t seed = 0;
  // Mean gradient evaluations per algorithm run.
  double gradient_evaluations = 0.0;
};

// Population gap function max_theta F_D(w, theta) - min_w F_D(w, theta).
absl::StatusOr<double> GapAtPoint(const ProblemSpec& problem,
                                  const JointPoint& z);

// Empirical gap function of the finite-sum objective of `loss` on `data`
// (including any regularizers of `loss`).
absl::StatusOr<double> EmpiricalGap(const Dataset& data, const LossSpec& loss,
                                    const Domain& domain, const JointPoint& z);

// Outputs of K independent runs. Trial k draws its dataset with seed
// DeriveSeed(seed, k, 1) and runs the algorithm with DeriveSeed(seed, k, 2).
struct TrialOutputs {
  std::vector<JointPoint> points;
  std::vector<int64_t> gradient_evaluations;
  uint64_t seed = 0;
  // Datasets are kept only when requested.
  std::vector<Dataset> datasets;
};

absl::StatusOr<TrialOutputs> RunTrials(const ProblemSpec& problem,
                                       const Algorithm& algorithm, int n,
                                       int trials, uint64_t seed,
                                       bool keep_datasets = false);

// Strong gap: the mean of GapAtPoint over the trial outputs.
absl::StatusOr<GapReport> StrongGap(const ProblemSpec& problem,
                                    const TrialOutputs& outputs);
// Weak gap: max_theta (1/K) sum_k F_D(w_k, theta) - min_w (1/K) sum_k
// F_D(w, theta_k), evaluated exactly through the structural population model.
absl::StatusOr<GapReport> WeakGap(const ProblemSpec& problem,
                                  const TrialOutputs& outputs);
// Empirical gap: the mean of EmpiricalGap on each trial's own dataset.
// Requires outputs produced with keep_datasets.
absl::StatusOr<GapReport> EmpiricalGapReport(const ProblemSpec& problem,
                                             const TrialOutputs& outputs);

absl::StatusOr<GapReport> StrongGapMc(const ProblemSpec& problem,
                                      const Algorithm& algorithm, int n,
                                      int trials, uint64_t seed);
absl::StatusOr<GapReport> WeakGapMc(const ProblemSpec& problem,
                                    const Algorithm& algorithm, int n,
                                    int trials, uint64_t seed);

}  // namespace dpssp

#endif  // DPSSP_EVAL_GAPS_H_
