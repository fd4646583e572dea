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

#include "dpssp/solvers/regularized.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/monotone.h"
#include "dpssp/core/random.h"
#include "dpssp/core/saddle_model.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {
namespace {

// Norm terms only have an exact minimizer in one dimension and only without
// coupling.
bool HasClosedForm(const SaddleModel& model) {
  if (!model.HasNormTerms()) return true;
  return model.coupling == 0.0 && model.primal.dim() == 1 &&
         model.dual.dim() == 1;
}

absl::StatusOr<RegularizedSolution> SolveIteratively(const Dataset& data,
                                                     const LossSpec& loss,
                                                     const Domain& domain,
                                                     double tolerance) {
  if (!loss.smoothness.has_value()) {
    return absl::FailedPreconditionError(
        "the iterative solver needs a smooth loss");
  }
  const double modulus = loss.StrongConvexity();
  const double lipschitz = *loss.smoothness + modulus;
  const StochasticOracle full = FullBatchOracle(data, loss);
  Rng unused(0);
  int64_t evaluations = 0;
  OperatorFn op = [&](const JointPoint& z) {
    return full(z, unused, &evaluations);
  };
  DPSSP_ASSIGN_OR_RETURN(
      MonotoneSolution solution,
      SolveStronglyMonotone(op, domain, domain.Center(), modulus, lipschitz,
                            tolerance));
  return RegularizedSolution{std::move(solution.point),
                             solution.certified_distance, evaluations};
}

}  // namespace

absl::StatusOr<RegularizedSolution> SolveRegularizedEmpirical(
    const Dataset& data, const LossSpec& loss, const Domain& domain,
    double distance_tolerance, SolveMethod method) {
  if (data.size() == 0) {
    return absl::InvalidArgumentError("empty dataset");
  }
  if (!(distance_tolerance > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "distance tolerance must be positive, got ", distance_tolerance));
  }
  if (!(loss.StrongConvexity() > 0.0)) {
    return absl::FailedPreconditionError(
        "the regularizer stack must make the objective strongly "
        "convex-strongly concave");
  }
  if (method == SolveMethod::kAuto) {
    const SaddleModel model = loss.EmpiricalModel(data);
    if (HasClosedForm(model)) {
      DPSSP_ASSIGN_OR_RETURN(ModelSaddle saddle,
                             SolveModelSaddle(model, domain, distance_tolerance));
      return RegularizedSolution{std::move(saddle.point),
                                 saddle.certified_distance,
                                 static_cast<int64_t>(data.size())};
    }
  }
  return SolveIteratively(data, loss, domain, distance_tolerance);
}

double SmoothPhaseTolerance(int phase, double lambda, int n_prime,
                            const PrivacyBudget& budget, double lipschitz) {
  return budget.delta / 5.0 * lipschitz /
         (std::ldexp(1.0, phase) * lambda * n_prime);
}

absl::StatusOr<SubroutineResult> SmoothPhaseSubroutine(
    const Dataset& data, const LossSpec& loss, int phase, double lambda,
    int n_prime, const PrivacyBudget& budget, double lipschitz,
    const Domain& domain, uint64_t seed) {
  if (!loss.smoothness.has_value()) {
    return absl::FailedPreconditionError(
        "output perturbation phase needs a smooth loss");
  }
  DPSSP_RETURN_IF_ERROR(ValidateBudget(budget));
  DPSSP_ASSIGN_OR_RETURN(
      const double sigma,
      OutputPerturbationSigma(phase, lambda, n_prime, budget, lipschitz));
  const double tolerance =
      SmoothPhaseTolerance(phase, lambda, n_prime, budget, lipschitz);
  DPSSP_ASSIGN_OR_RETURN(RegularizedSolution solution,
                         SolveRegularizedEmpirical(data, loss, domain, tolerance));
  Rng rng(seed);
  JointPoint z = std::move(solution.point);
  const Vector noise = GaussianVector(z.dim(), sigma, rng);
  z.w += noise.head(z.primal_dim());
  z.theta += noise.tail(z.dual_dim());
  domain.ProjectInPlace(z);
  return SubroutineResult{std::move(z), solution.gradient_evaluations, true};
}

Algorithm RegularizedErmAlgorithm(LossSpec loss, Domain domain, double lambda,
                                  JointPoint center,
                                  double distance_tolerance) {
  return [loss = std::move(loss), domain = std::move(domain), lambda,
          center = std::move(center), distance_tolerance](
             const Dataset& data,
             uint64_t) -> absl::StatusOr<AlgorithmOutput> {
    DPSSP_ASSIGN_OR_RETURN(LossSpec regularized,
                           Regularize(loss, 0.5 * lambda, center));
    DPSSP_ASSIGN_OR_RETURN(
        RegularizedSolution solution,
        SolveRegularizedEmpirical(data, regularized, domain,
                                  distance_tolerance));
    return AlgorithmOutput{std::move(solution.point),
                           solution.gradient_evaluations};
  };
}

}  // namespace dpssp
