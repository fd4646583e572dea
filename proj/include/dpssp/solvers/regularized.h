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

#ifndef DPSSP_SOLVERS_REGULARIZED_H_
#define DPSSP_SOLVERS_REGULARIZED_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpssp/core/algorithm.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"
#include "dpssp/privacy/privacy.h"
#include "dpssp/solvers/sgda.h"

namespace dpssp {

enum class SolveMethod {
  // Closed form when the empirical model admits one, iterative otherwise.
  kAuto,
  // Always the projected strongly monotone iteration on the full-batch
  // empirical operator.
  kIterative,
};

struct RegularizedSolution {
  JointPoint point;
  // Upper bound on the distance to the exact empirical saddle point.
  double certified_distance = 0.0;
  int64_t gradient_evaluations = 0;
};

// Saddle point of F_S(w, theta) = (1/n) sum_i f(w, theta; x_i) including the
// regularizer stack, to within `distance_tolerance`. Needs the stack to make
// the objective strongly convex-strongly concave. The closed-form path counts
// one pass over the data as n gradient evaluations; the iterative path needs
// the loss smoothness and counts n per iteration.
absl::StatusOr<RegularizedSolution> SolveRegularizedEmpirical(
    const Dataset& data, const LossSpec& loss, const Domain& domain,
    double distance_tolerance, SolveMethod method = SolveMethod::kAuto);

// Output-perturbation phase: solves the phase objective to distance
// (delta/5) L / (2^t lambda n'), adds N(0, sigma_t^2 I) with sigma_t from
// OutputPerturbationSigma, and projects onto the domain. `lipschitz` is the
// Lipschitz constant of the unregularized loss. Requires a smooth loss.
absl::StatusOr<SubroutineResult> SmoothPhaseSubroutine(
    const Dataset& data, const LossSpec& loss, int phase, double lambda,
    int n_prime, const PrivacyBudget& budget, double lipschitz,
    const Domain& domain, uint64_t seed);

// Distance tolerance (delta/5) L / (2^t lambda n') of the smooth phase.
double SmoothPhaseTolerance(int phase, double lambda, int n_prime,
                            const PrivacyBudget& budget, double lipschitz);

// The lambda-regularized empirical saddle point: adds (lambda/2)(|w - c_w|^2 -
// |theta - c_theta|^2), making the objective lambda-SC/SC, and solves it to
// `distance_tolerance`.
Algorithm RegularizedErmAlgorithm(LossSpec loss, Domain domain, double lambda,
                                  JointPoint center,
                                  double distance_tolerance = 1e-12);

}  // namespace dpssp

#endif  // DPSSP_SOLVERS_REGULARIZED_H_
