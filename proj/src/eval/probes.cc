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

#include "dpssp/eval/probes.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/random.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {

absl::StatusOr<StabilityReport> UasProbe(const Algorithm& algorithm,
                                         const ProblemSpec& problem, int n,
                                         int pairs, uint64_t seed) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (pairs < 1) return absl::InvalidArgumentError("pairs must be >= 1");
  StabilityReport report;
  report.pairs = pairs;
  report.seed = seed;
  double total = 0.0, total_sq = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const uint64_t data_seed = DeriveSeed(seed, p, 1);
    DPSSP_ASSIGN_OR_RETURN(Dataset data, SampleDataset(problem, n, data_seed));
    Dataset neighbor = data;
    Rng rng(DeriveSeed(seed, p, 3));
    const size_t index = UniformIndex(static_cast<size_t>(n), rng);
    neighbor.samples[index] = problem.sampler(rng);
    const uint64_t algo_seed = DeriveSeed(seed, p, 2);
    absl::StatusOr<AlgorithmOutput> a = algorithm(data, algo_seed);
    absl::StatusOr<AlgorithmOutput> b = algorithm(neighbor, algo_seed);
    for (const auto* out : {&a, &b}) {
      if (!out->ok()) {
        return absl::Status(
            out->status().code(),
            absl::StrCat("pair ", p, ": ", out->status().message()));
      }
    }
    const double d = Distance(a->point, b->point);
    total += d;
    total_sq += d * d;
    report.max_distance = std::max(report.max_distance, d);
  }
  report.mean_distance = total / pairs;
  if (pairs > 1) {
    const double var =
        std::max(0.0, (total_sq - pairs * report.mean_distance *
                                      report.mean_distance) /
                          (pairs - 1.0));
    report.std_error = std::sqrt(var / pairs);
  }
  return report;
}

double OutputVariance(const TrialOutputs& outputs) {
  const size_t k = outputs.points.size();
  if (k < 2) return 0.0;
  JointPoint mean = outputs.points[0];
  for (size_t i = 1; i < k; ++i) {
    mean.w += outputs.points[i].w;
    mean.theta += outputs.points[i].theta;
  }
  mean.w /= static_cast<double>(k);
  mean.theta /= static_cast<double>(k);
  double ss = 0.0;
  for (const JointPoint& z : outputs.points) {
    const double d = Distance(z, mean);
    ss += d * d;
  }
  return ss / (static_cast<double>(k) - 1.0);
}

absl::StatusOr<double> VarianceProbe(const Algorithm& algorithm,
                                     const ProblemSpec& problem, int n,
                                     int trials, uint64_t seed) {
  if (trials < 2) {
    return absl::InvalidArgumentError("variance probe needs >= 2 trials");
  }
  DPSSP_ASSIGN_OR_RETURN(TrialOutputs outputs,
                         RunTrials(problem, algorithm, n, trials, seed));
  return OutputVariance(outputs);
}

absl::StatusOr<SeparationReport> SeparationCheck(const ProblemSpec& problem,
                                                 const Algorithm& algorithm,
                                                 int n, int trials,
                                                 uint64_t seed) {
  if (trials < 2) {
    return absl::InvalidArgumentError("separation check needs >= 2 trials");
  }
  DPSSP_ASSIGN_OR_RETURN(TrialOutputs outputs,
                         RunTrials(problem, algorithm, n, trials, seed));
  SeparationReport report;
  DPSSP_ASSIGN_OR_RETURN(report.strong, StrongGap(problem, outputs));
  DPSSP_ASSIGN_OR_RETURN(report.weak, WeakGap(problem, outputs));
  report.difference = report.strong.mean - report.weak.mean;
  report.tau = std::sqrt(OutputVariance(outputs));
  report.lipschitz_tau = problem.lipschitz() * report.tau;
  return report;
}

}  // namespace dpssp
