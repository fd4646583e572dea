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

#include "dpssp/eval/gaps.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/random.h"
#include "dpssp/core/saddle_model.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {
namespace {

absl::Status ValidateTrialArgs(int n, int trials) {
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  return absl::OkStatus();
}

double MeanOf(const std::vector<int64_t>& values) {
  if (values.empty()) return 0.0;
  double total = 0.0;
  for (int64_t v : values) total += static_cast<double>(v);
  return total / static_cast<double>(values.size());
}

// Mean and standard error of per-trial values.
std::pair<double, double> MeanAndStdError(const std::vector<double>& values) {
  const double k = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= k;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (k - 1.0) / k)};
}

GapReport MakeReport(GapKind kind, const TrialOutputs& outputs) {
  GapReport report;
  report.kind = kind;
  report.trials = static_cast<int>(outputs.points.size());
  report.seed = outputs.seed;
  report.gradient_evaluations = MeanOf(outputs.gradient_evaluations);
  return report;
}

// Weak gap of the average outputs, given the block sums.
absl::StatusOr<double> WeakGapFromSums(const ProblemSpec& problem,
                                       const Vector& w_mean,
                                       const Vector& theta_mean,
                                       double primal_value_mean,
                                       double dual_value_mean) {
  const SaddleModel& model = problem.population;
  DPSSP_ASSIGN_OR_RETURN(
      BestResponse up,
      DualBestResponse(model, w_mean, problem.domain.dual()));
  DPSSP_ASSIGN_OR_RETURN(
      BestResponse down,
      PrimalBestResponse(model, theta_mean, problem.domain.primal()));
  // max_theta mean_k F(w_k, theta) differs from max_theta F(w_mean, theta)
  // only through the primal side value; symmetrically for the minimum.
  const double upper = up.value - model.primal.Value(w_mean) +
                       primal_value_mean;
  const double lower = down.value + model.dual.Value(theta_mean) -
                       dual_value_mean;
  return upper - lower;
}

}  // namespace

std::string GapKindName(GapKind kind) {
  switch (kind) {
    case GapKind::kStrong:
      return "strong";
    case GapKind::kWeak:
      return "weak";
    case GapKind::kEmpirical:
      return "empirical";
  }
  return "unknown";
}

absl::StatusOr<double> GapAtPoint(const ProblemSpec& problem,
                                  const JointPoint& z) {
  DPSSP_ASSIGN_OR_RETURN(BestResponse up,
                         PopulationBestResponse(problem, z, Side::kDual));
  DPSSP_ASSIGN_OR_RETURN(BestResponse down,
                         PopulationBestResponse(problem, z, Side::kPrimal));
  return up.value - down.value;
}

absl::StatusOr<double> EmpiricalGap(const Dataset& data, const LossSpec& loss,
                                    const Domain& domain,
                                    const JointPoint& z) {
  if (data.size() == 0) {
    return absl::InvalidArgumentError("empirical gap needs a nonempty dataset");
  }
  if (!domain.Contains(z, 1e-9)) {
    return absl::InvalidArgumentError("point lies outside the domain");
  }
  return ModelGap(loss.EmpiricalModel(data), domain, z);
}

absl::StatusOr<TrialOutputs> RunTrials(const ProblemSpec& problem,
                                       const Algorithm& algorithm, int n,
                                       int trials, uint64_t seed,
                                       bool keep_datasets) {
  DPSSP_RETURN_IF_ERROR(ValidateTrialArgs(n, trials));
  TrialOutputs outputs;
  outputs.seed = seed;
  outputs.points.reserve(trials);
  outputs.gradient_evaluations.reserve(trials);
  for (int k = 0; k < trials; ++k) {
    DPSSP_ASSIGN_OR_RETURN(Dataset data,
                           SampleDataset(problem, n, DeriveSeed(seed, k, 1)));
    absl::StatusOr<AlgorithmOutput> out =
        algorithm(data, DeriveSeed(seed, k, 2));
    if (!out.ok()) {
      return absl::Status(out.status().code(),
                          absl::StrCat("trial ", k, ": ",
                                       out.status().message()));
    }
    if (!problem.domain.Contains(out->point, 1e-9)) {
      return absl::InternalError(
          absl::StrCat("trial ", k, ": algorithm output outside the domain"));
    }
    outputs.points.push_back(std::move(out->point));
    outputs.gradient_evaluations.push_back(out->gradient_evaluations);
    if (keep_datasets) outputs.datasets.push_back(std::move(data));
  }
  return outputs;
}

absl::StatusOr<GapReport> StrongGap(const ProblemSpec& problem,
                                    const TrialOutputs& outputs) {
  if (outputs.points.empty()) {
    return absl::InvalidArgumentError("no trial outputs");
  }
  std::vector<double> gaps;
  gaps.reserve(outputs.points.size());
  for (const JointPoint& z : outputs.points) {
    DPSSP_ASSIGN_OR_RETURN(double gap, GapAtPoint(problem, z));
    gaps.push_back(gap);
  }
  GapReport report = MakeReport(GapKind::kStrong, outputs);
  std::tie(report.mean, report.std_error) = MeanAndStdError(gaps);
  return report;
}

absl::StatusOr<GapReport> WeakGap(const ProblemSpec& problem,
                                  const TrialOutputs& outputs) {
  const int k = static_cast<int>(outputs.points.size());
  if (k == 0) return absl::InvalidArgumentError("no trial outputs");
  const SaddleModel& model = problem.population;
  Vector w_sum = Vector::Zero(problem.domain.primal_dim());
  Vector theta_sum = Vector::Zero(problem.domain.dual_dim());
  std::vector<double> a(k), c(k);
  double a_sum = 0.0, c_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const JointPoint& z = outputs.points[i];
    w_sum += z.w;
    theta_sum += z.theta;
    a[i] = model.primal.Value(z.w);
    c[i] = model.dual.Value(z.theta);
    a_sum += a[i];
    c_sum += c[i];
  }
  GapReport report = MakeReport(GapKind::kWeak, outputs);
  DPSSP_ASSIGN_OR_RETURN(
      report.mean, WeakGapFromSums(problem, w_sum / k, theta_sum / k,
                                   a_sum / k, c_sum / k));
  if (k < 2) return report;
  // Jackknife over trials.
  std::vector<double> loo(k);
  double loo_mean = 0.0;
  for (int i = 0; i < k; ++i) {
    const JointPoint& z = outputs.points[i];
    const double m = k - 1.0;
    DPSSP_ASSIGN_OR_RETURN(
        loo[i], WeakGapFromSums(problem, (w_sum - z.w) / m,
                                (theta_sum - z.theta) / m, (a_sum - a[i]) / m,
                                (c_sum - c[i]) / m));
    loo_mean += loo[i];
  }
  loo_mean /= k;
  double ss = 0.0;
  for (double v : loo) ss += (v - loo_mean) * (v - loo_mean);
  report.std_error = std::sqrt((k - 1.0) / k * ss);
  return report;
}

absl::StatusOr<GapReport> EmpiricalGapReport(const ProblemSpec& problem,
                                             const TrialOutputs& outputs) {
  if (outputs.points.empty()) {
    return absl::InvalidArgumentError("no trial outputs");
  }
  if (outputs.datasets.size() != outputs.points.size()) {
    return absl::FailedPreconditionError(
        "empirical gap needs the trial datasets (keep_datasets)");
  }
  std::vector<double> gaps;
  gaps.reserve(outputs.points.size());
  for (size_t i = 0; i < outputs.points.size(); ++i) {
    DPSSP_ASSIGN_OR_RETURN(
        double gap, EmpiricalGap(outputs.datasets[i], problem.loss,
                                 problem.domain, outputs.points[i]));
    gaps.push_back(gap);
  }
  GapReport report = MakeReport(GapKind::kEmpirical, outputs);
  std::tie(report.mean, report.std_error) = MeanAndStdError(gaps);
  return report;
}

absl::StatusOr<GapReport> StrongGapMc(const ProblemSpec& problem,
                                      const Algorithm& algorithm, int n,
                                      int trials, uint64_t seed) {
  DPSSP_ASSIGN_OR_RETURN(TrialOutputs outputs,
                         RunTrials(problem, algorithm, n, trials, seed));
  return StrongGap(problem, outputs);
}

absl::StatusOr<GapReport> WeakGapMc(const ProblemSpec& problem,
                                    const Algorithm& algorithm, int n,
                                    int trials, uint64_t seed) {
  DPSSP_ASSIGN_OR_RETURN(TrialOutputs outputs,
                         RunTrials(problem, algorithm, n, trials, seed));
  return WeakGap(problem, outputs);
}

}  // namespace dpssp
