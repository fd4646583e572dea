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

#ifndef DPSSP_EVAL_PROBES_H_
#define DPSSP_EVAL_PROBES_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpssp/core/algorithm.h"
#include "dpssp/eval/gaps.h"
#include "dpssp/problems/problems.h"

namespace dpssp {

// Mean output distance over random adjacent pairs. This estimates the
// average over random pairs, so it can refute a claimed worst-case stability
// bound but never certify one.
struct StabilityReport {
  double mean_distance = 0.0;
  double std_error = 0.0;
  double max_distance = 0.0;
  int pairs = 0;
  uint64_t seed = 0;
};

// Pair p draws S with DeriveSeed(seed, p, 1), replaces a uniformly chosen
// entry by a fresh draw, and runs the algorithm on S and S' with the shared
// seed DeriveSeed(seed, p, 2).
absl::StatusOr<StabilityReport> UasProbe(const Algorithm& algorithm,
                                         const ProblemSpec& problem, int n,
                                         int pairs, uint64_t seed);

// Unbiased estimate (1/(K-1)) sum_k |A_k - mean|^2 of E|A(S) - E A(S)|^2.
double OutputVariance(const TrialOutputs& outputs);

absl::StatusOr<double> VarianceProbe(const Algorithm& algorithm,
                                     const ProblemSpec& problem, int n,
                                     int trials, uint64_t seed);

// Both sides of gap - weakgap <= L tau from shared trial outputs.
struct SeparationReport {
  GapReport strong;
  GapReport weak;
  double difference = 0.0;
  double tau = 0.0;
  double lipschitz_tau = 0.0;
};

absl::StatusOr<SeparationReport> SeparationCheck(const ProblemSpec& problem,
                                                 const Algorithm& algorithm,
                                                 int n, int trials,
                                                 uint64_t seed);

}  // namespace dpssp

#endif  // DPSSP_EVAL_PROBES_H_
