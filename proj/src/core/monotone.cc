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

#include "dpssp/core/monotone.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpssp {
namespace {

// One projected step; returns the new point and writes the residual norm.
JointPoint Step(const OperatorFn& op, const Domain& domain,
                const JointPoint& z, double step, double* residual) {
  const Vector g = op(z);
  const int dw = z.primal_dim();
  JointPoint next(z.w - step * g.head(dw), z.theta - step * g.tail(z.dual_dim()));
  domain.ProjectInPlace(next);
  *residual = Distance(z, next);
  return next;
}

}  // namespace

double ResidualDistanceBound(const OperatorFn& op, const Domain& domain,
                             const JointPoint& z, double modulus,
                             double lipschitz) {
  const double step = modulus / (lipschitz * lipschitz);
  double residual = 0.0;
  Step(op, domain, z, step, &residual);
  return (1.0 + step * lipschitz) * residual / (step * modulus);
}

absl::StatusOr<MonotoneSolution> SolveStronglyMonotone(
    const OperatorFn& op, const Domain& domain, JointPoint start,
    double modulus, double lipschitz, double distance_tolerance,
    int64_t max_iterations) {
  if (!(modulus > 0.0) || !(lipschitz >= modulus) ||
      !std::isfinite(lipschitz)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "need 0 < modulus <= lipschitz < inf, got modulus=", modulus,
        " lipschitz=", lipschitz));
  }
  const double step = modulus / (lipschitz * lipschitz);
  const double scale = (1.0 + step * lipschitz) / (step * modulus);
  domain.ProjectInPlace(start);
  JointPoint z = std::move(start);
  double bound = 0.0;
  for (int64_t it = 0; it < max_iterations; ++it) {
    double residual = 0.0;
    JointPoint next = Step(op, domain, z, step, &residual);
    bound = scale * residual;
    if (bound <= distance_tolerance) {
      return MonotoneSolution{std::move(z), bound, it};
    }
    z = std::move(next);
  }
  return absl::DeadlineExceededError(absl::StrCat(
      "strongly monotone solver exhausted ", max_iterations,
      " iterations; last certified distance ", bound, " > tolerance ",
      distance_tolerance));
}

}  // namespace dpssp
