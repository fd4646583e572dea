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

#ifndef DPSSP_SOLVERS_RECURSIVE_REGULARIZATION_H_
#define DPSSP_SOLVERS_RECURSIVE_REGULARIZATION_H_

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/core/algorithm.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"
#include "dpssp/privacy/privacy.h"
#include "dpssp/solvers/sgda.h"

namespace dpssp {

struct RecursionSchedule {
  double lambda = 0.0;
  int phases = 0;
  int n_prime = 0;
  // B / 2^t for t = 1..phases.
  std::vector<double> initial_distances;
  // Lipschitz bound used for every phase objective: max(5L, L + 2 B lambda
  // (2^{T+1} - 2)).
  double phase_lipschitz = 0.0;
};

// n' = floor(n / ceil(log2 n)), T = max(1, ceil(log2(L / (B lambda)))).
// Fails if lambda < L / (B sqrt(n)) or the partition T n' <= n is infeasible.
absl::StatusOr<RecursionSchedule> MakeRecursionSchedule(int n,
                                                        double lipschitz,
                                                        double diameter,
                                                        double lambda);

// What a phase subroutine sees.
struct PhaseInput {
  int phase = 0;
  const Dataset* block = nullptr;
  // f^(t): the base loss with the regularizers of phases 1..t.
  const LossSpec* loss = nullptr;
  // [w_{t-1}, theta_{t-1}] and the distance bound B / 2^t.
  JointPoint start;
  double initial_distance = 0.0;
  const RecursionSchedule* schedule = nullptr;
  const Domain* domain = nullptr;
  uint64_t seed = 0;
};

using PhaseSubroutine =
    std::function<absl::StatusOr<SubroutineResult>(const PhaseInput&)>;

// Exact regularized empirical saddle point (relative accuracy zero).
PhaseSubroutine ExactPhaseSubroutine(double distance_tolerance = 1e-12);

// Noisy SGDA calibrated on (n', d, budget) with the phase Lipschitz bound and
// the phase distance bound.
PhaseSubroutine NoisySgdaPhaseSubroutine(const PrivacyBudget& budget);

// Output perturbation of the near-exact phase saddle point.
PhaseSubroutine OutputPerturbationPhaseSubroutine(const PrivacyBudget& budget);

struct RecursionTrace {
  JointPoint output;
  RecursionSchedule schedule;
  // [w_t, theta_t] for t = 0..T (index 0 is the domain center).
  std::vector<JointPoint> iterates;
  // f^(t) for t = 1..T.
  std::vector<LossSpec> phase_losses;
  // Half-open sample ranges [begin, end) consumed by each phase.
  std::vector<std::pair<size_t, size_t>> blocks;
  int64_t gradient_evaluations = 0;
  bool noise_injected = false;
};

// Recursive regularization: splits the first T n' samples into T contiguous
// blocks, starts from the domain center, and in phase t adds the regularizer
// 2^t lambda (|w - w_{t-1}|^2 - |theta - theta_{t-1}|^2) before calling the
// subroutine on block t.
absl::StatusOr<RecursionTrace> RecursiveRegularization(
    const Dataset& data, const LossSpec& loss,
    const PhaseSubroutine& subroutine, double lambda, const Domain& domain,
    uint64_t seed);

Algorithm RecursiveRegularizationAlgorithm(LossSpec loss, Domain domain,
                                           PhaseSubroutine subroutine,
                                           double lambda);

// lambda = (48/B)(alpha + L / sqrt(n')) with
// alpha = log(n') L sqrt(d log(1/delta)) / (n' eps) for the noisy SGDA
// subroutine; alpha = 0 when `budget` is absent (exact subroutine).
absl::StatusOr<double> AutoLambdaNonsmooth(int n, int dim, double lipschitz,
                                           double diameter,
                                           const PrivacyBudget* budget);

// lambda = (48/B)(L / sqrt(n') + L sqrt(d log(2/delta)) / (n' eps)).
absl::StatusOr<double> AutoLambdaSmooth(int n, int dim, double lipschitz,
                                        double diameter,
                                        const PrivacyBudget& budget);

// n' = floor(n / ceil(log2 n)) for n >= 2.
int PhaseSampleSize(int n);

}  // namespace dpssp

#endif  // DPSSP_SOLVERS_RECURSIVE_REGULARIZATION_H_
