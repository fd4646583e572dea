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

#include "dpssp/solvers/recursive_regularization.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/random.h"
#include "dpssp/core/status_macros.h"
#include "dpssp/solvers/regularized.h"

namespace dpssp {

int PhaseSampleSize(int n) {
  if (n < 2) return 0;
  const int ceil_log2 = std::bit_width(static_cast<unsigned>(n - 1));
  return n / ceil_log2;
}

absl::StatusOr<RecursionSchedule> MakeRecursionSchedule(int n,
                                                        double lipschitz,
                                                        double diameter,
                                                        double lambda) {
  if (n < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("recursive regularization needs n >= 2, got ", n));
  }
  if (!(lipschitz > 0.0) || !(diameter > 0.0)) {
    return absl::InvalidArgumentError("L and B must be positive");
  }
  const double floor = lipschitz / (diameter * std::sqrt(n));
  if (!(lambda >= floor * (1.0 - 1e-12)) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "lambda=", lambda, " is below the floor L/(B sqrt(n)) = ", floor));
  }
  RecursionSchedule s;
  s.lambda = lambda;
  s.n_prime = PhaseSampleSize(n);
  const double log_ratio = std::log2(lipschitz / (diameter * lambda));
  s.phases = std::max(1, static_cast<int>(std::ceil(log_ratio - 1e-12)));
  if (s.n_prime < 1 || static_cast<int64_t>(s.phases) * s.n_prime > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot partition n=", n, " into T=", s.phases, " blocks of n'=",
        s.n_prime));
  }
  for (int t = 1; t <= s.phases; ++t) {
    s.initial_distances.push_back(std::ldexp(diameter, -t));
  }
  const double stacked =
      lipschitz + 2.0 * diameter * lambda * (std::ldexp(2.0, s.phases) - 2.0);
  s.phase_lipschitz = std::max(5.0 * lipschitz, stacked);
  return s;
}

PhaseSubroutine ExactPhaseSubroutine(double distance_tolerance) {
  return [distance_tolerance](
             const PhaseInput& in) -> absl::StatusOr<SubroutineResult> {
    DPSSP_ASSIGN_OR_RETURN(
        RegularizedSolution solution,
        SolveRegularizedEmpirical(*in.block, *in.loss, *in.domain,
                                  distance_tolerance));
    return SubroutineResult{std::move(solution.point),
                            solution.gradient_evaluations, false};
  };
}

PhaseSubroutine NoisySgdaPhaseSubroutine(const PrivacyBudget& budget) {
  return [budget](const PhaseInput& in) -> absl::StatusOr<SubroutineResult> {
    DPSSP_ASSIGN_OR_RETURN(
        SgdaPrivacyPlan plan,
        CalibrateNoisySgda(static_cast<int>(in.block->size()),
                           in.domain->dim(), budget,
                           in.schedule->phase_lipschitz, in.initial_distance));
    return NoisySgda(*in.block, *in.loss, plan, in.start, *in.domain, in.seed);
  };
}

PhaseSubroutine OutputPerturbationPhaseSubroutine(const PrivacyBudget& budget) {
  return [budget](const PhaseInput& in) -> absl::StatusOr<SubroutineResult> {
    return SmoothPhaseSubroutine(*in.block, *in.loss, in.phase,
                                 in.schedule->lambda, in.schedule->n_prime,
                                 budget, in.loss->lipschitz, *in.domain,
                                 in.seed);
  };
}

absl::StatusOr<RecursionTrace> RecursiveRegularization(
    const Dataset& data, const LossSpec& loss,
    const PhaseSubroutine& subroutine, double lambda, const Domain& domain,
    uint64_t seed) {
  if (!loss.regularizers.empty()) {
    return absl::InvalidArgumentError(
        "recursive regularization expects an unregularized base loss");
  }
  DPSSP_ASSIGN_OR_RETURN(
      RecursionSchedule schedule,
      MakeRecursionSchedule(static_cast<int>(data.size()), loss.lipschitz,
                            domain.diameter(), lambda));
  RecursionTrace trace;
  trace.iterates.push_back(domain.Center());
  LossSpec phase_loss = loss;
  for (int t = 1; t <= schedule.phases; ++t) {
    const size_t begin = static_cast<size_t>(t - 1) * schedule.n_prime;
    const size_t end = begin + schedule.n_prime;
    Dataset block;
    block.samples.assign(data.samples.begin() + begin,
                         data.samples.begin() + end);
    DPSSP_ASSIGN_OR_RETURN(
        phase_loss,
        Regularize(phase_loss, std::ldexp(lambda, t), trace.iterates.back()));
    PhaseInput in;
    in.phase = t;
    in.block = &block;
    in.loss = &phase_loss;
    in.start = trace.iterates.back();
    in.initial_distance = schedule.initial_distances[t - 1];
    in.schedule = &schedule;
    in.domain = &domain;
    in.seed = DeriveSeed(seed, t, 0x52);
    absl::StatusOr<SubroutineResult> result = subroutine(in);
    if (!result.ok()) {
      return absl::Status(result.status().code(),
                          absl::StrCat("phase ", t, ": ",
                                       result.status().message()));
    }
    trace.gradient_evaluations += result->gradient_evaluations;
    trace.noise_injected |= result->noise_injected;
    trace.iterates.push_back(std::move(result->point));
    trace.phase_losses.push_back(phase_loss);
    trace.blocks.emplace_back(begin, end);
  }
  trace.output = trace.iterates.back();
  trace.schedule = std::move(schedule);
  return trace;
}

Algorithm RecursiveRegularizationAlgorithm(LossSpec loss, Domain domain,
                                           PhaseSubroutine subroutine,
                                           double lambda) {
  return [loss = std::move(loss), domain = std::move(domain),
          subroutine = std::move(subroutine),
          lambda](const Dataset& data,
                  uint64_t seed) -> absl::StatusOr<AlgorithmOutput> {
    DPSSP_ASSIGN_OR_RETURN(
        RecursionTrace trace,
        RecursiveRegularization(data, loss, subroutine, lambda, domain, seed));
    return AlgorithmOutput{std::move(trace.output), trace.gradient_evaluations};
  };
}

absl::StatusOr<double> AutoLambdaNonsmooth(int n, int dim, double lipschitz,
                                           double diameter,
                                           const PrivacyBudget* budget) {
  const int n_prime = PhaseSampleSize(n);
  if (n_prime < 1) {
    return absl::InvalidArgumentError(absl::StrCat("n too small: ", n));
  }
  double alpha = 0.0;
  if (budget != nullptr) {
    DPSSP_RETURN_IF_ERROR(ValidateBudget(*budget));
    alpha = std::log(static_cast<double>(n_prime)) * lipschitz *
            std::sqrt(dim * std::log(1.0 / budget->delta)) /
            (n_prime * budget->epsilon);
  }
  return 48.0 / diameter * (alpha + lipschitz / std::sqrt(n_prime));
}

absl::StatusOr<double> AutoLambdaSmooth(int n, int dim, double lipschitz,
                                        double diameter,
                                        const PrivacyBudget& budget) {
  const int n_prime = PhaseSampleSize(n);
  if (n_prime < 1) {
    return absl::InvalidArgumentError(absl::StrCat("n too small: ", n));
  }
  DPSSP_RETURN_IF_ERROR(ValidateBudget(budget));
  return 48.0 / diameter *
         (lipschitz / std::sqrt(n_prime) +
          lipschitz * std::sqrt(dim * std::log(2.0 / budget.delta)) /
              (n_prime * budget.epsilon));
}

}  // namespace dpssp
