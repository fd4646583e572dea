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

#include "dpssp/privacy/privacy.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {
namespace {

// Relative slack for inequalities that hold with equality by construction.
constexpr double kSlack = 1e-12;

double SgdaSigmaFloor(const SgdaPrivacyPlan& plan) {
  return kAccountantConstant * plan.lipschitz *
         std::sqrt(static_cast<double>(plan.iterations) *
                   std::log(1.0 / plan.budget.delta)) /
         (plan.n * plan.budget.epsilon);
}

}  // namespace

absl::Status ValidateBudget(const PrivacyBudget& budget) {
  if (!(budget.epsilon > 0.0) || !std::isfinite(budget.epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be finite and positive, got ", budget.epsilon));
  }
  if (!(budget.delta > 0.0) || !(budget.delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1], got ", budget.delta));
  }
  return absl::OkStatus();
}

absl::StatusOr<SgdaPrivacyPlan> CalibrateNoisySgda(int n, int dim,
                                                   const PrivacyBudget& budget,
                                                   double lipschitz,
                                                   double initial_distance) {
  DPSSP_RETURN_IF_ERROR(ValidateBudget(budget));
  if (n < 8) {
    return absl::InvalidArgumentError(
        absl::StrCat("noisy SGDA calibration needs n >= 8, got ", n));
  }
  if (dim < 1) {
    return absl::InvalidArgumentError("dimension must be at least 1");
  }
  if (!(lipschitz > 0.0) || !(initial_distance > 0.0)) {
    return absl::InvalidArgumentError(
        "lipschitz and initial distance must be positive");
  }
  const double eps = budget.epsilon;
  const double log_inv_delta = std::log(1.0 / budget.delta);
  const double nd = n;
  double t_real = nd / 8.0;
  if (log_inv_delta > 0.0) {
    t_real = std::min(t_real, nd * nd * eps * eps / (32.0 * dim * log_inv_delta));
  }
  SgdaPrivacyPlan plan;
  plan.n = n;
  plan.dim = dim;
  plan.lipschitz = lipschitz;
  plan.initial_distance = initial_distance;
  plan.budget = budget;
  plan.iterations = std::max<int64_t>(1, static_cast<int64_t>(std::floor(t_real)));
  const double t = static_cast<double>(plan.iterations);
  // Smallest batch meeting T >= n^2 eps / m^2.
  const double m_real = std::ceil(nd * std::sqrt(eps / t) * (1.0 - kSlack));
  plan.batch_size = static_cast<int>(std::clamp(m_real, 1.0, nd));
  plan.sigma = SgdaSigmaFloor(plan);
  plan.step_size = initial_distance / (lipschitz * std::sqrt(t));
  plan.reasons = CheckSgdaPreconditions(plan);
  plan.preconditions_ok = plan.reasons.empty();
  return plan;
}

std::vector<std::string> CheckSgdaPreconditions(const SgdaPrivacyPlan& plan) {
  std::vector<std::string> reasons;
  if (!ValidateBudget(plan.budget).ok()) {
    reasons.push_back("invalid privacy budget");
    return reasons;
  }
  if (plan.n < 1 || plan.iterations < 1) {
    reasons.push_back(absl::StrCat("need n >= 1 and T >= 1, got n=", plan.n,
                                   " T=", plan.iterations));
    return reasons;
  }
  if (plan.batch_size < 1 || plan.batch_size > plan.n) {
    reasons.push_back(absl::StrCat("batch size ", plan.batch_size,
                                   " outside [1, n=", plan.n, "]"));
  }
  const double floor = SgdaSigmaFloor(plan);
  if (!(plan.sigma >= 0.0) || plan.sigma < floor * (1.0 - kSlack)) {
    reasons.push_back(absl::StrCat("sigma=", plan.sigma,
                                   " below the accountant floor ", floor));
  }
  const double m = plan.batch_size;
  const double t_floor =
      static_cast<double>(plan.n) * plan.n * plan.budget.epsilon / (m * m);
  if (static_cast<double>(plan.iterations) < t_floor * (1.0 - kSlack)) {
    reasons.push_back(absl::StrCat("T=", plan.iterations,
                                   " below n^2 eps / m^2 = ", t_floor));
  }
  return reasons;
}

absl::StatusOr<double> OutputPerturbationSigma(int phase, double lambda,
                                               int n_prime,
                                               const PrivacyBudget& budget,
                                               double lipschitz) {
  if (phase < 1 || !(lambda > 0.0) || n_prime < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need t >= 1, lambda > 0, n' >= 1; got t=", phase, " lambda=", lambda,
        " n'=", n_prime));
  }
  if (!(budget.epsilon > 0.0) || !(budget.delta > 0.0)) {
    return absl::InvalidArgumentError("epsilon and delta must be positive");
  }
  const double log_term = std::log(2.0 / budget.delta);
  if (!(log_term > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "log(2/delta) must be positive, got delta=", budget.delta));
  }
  return 8.0 * lipschitz * std::sqrt(log_term) /
         (std::ldexp(1.0, phase) * lambda * n_prime * budget.epsilon);
}

absl::StatusOr<PrivacyBudget> ComposeParallel(
    const std::vector<PrivacyBudget>& budgets, bool disjointness_attested) {
  if (!disjointness_attested) {
    return absl::FailedPreconditionError(
        "parallel composition requires disjoint partitions; sequential "
        "composition is not supported");
  }
  PrivacyBudget out{0.0, 0.0};
  for (const PrivacyBudget& b : budgets) {
    out.epsilon = std::max(out.epsilon, b.epsilon);
    out.delta = std::max(out.delta, b.delta);
  }
  return out;
}

absl::StatusOr<double> RegularizedSensitivity(double lipschitz,
                                              double lambda_total, int n) {
  if (!(lambda_total > 0.0) || n < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need lambda > 0 and n >= 1, got lambda=", lambda_total, " n=", n));
  }
  if (std::isinf(lambda_total)) return 0.0;
  return 2.0 * lipschitz / (lambda_total * n);
}

absl::StatusOr<double> LocalDpSigma(const PrivacyBudget& budget,
                                    double lipschitz) {
  DPSSP_RETURN_IF_ERROR(ValidateBudget(budget));
  return lipschitz * std::sqrt(std::log(1.0 / budget.delta)) / budget.epsilon;
}

}  // namespace dpssp
