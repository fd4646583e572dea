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

#ifndef DPSSP_CORE_MONOTONE_H_
#define DPSSP_CORE_MONOTONE_H_

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"

namespace dpssp {

// Maps a point to the stacked operator value [grad_w F, -grad_theta F].
using OperatorFn = std::function<Vector(const JointPoint&)>;

struct MonotoneSolution {
  JointPoint point;
  // Rigorous upper bound on |point - z*| from the projected residual.
  double certified_distance = 0.0;
  int64_t iterations = 0;
};

// Upper bound on |z - z*| for the solution z* of the variational inequality
// of a `modulus`-strongly monotone, `lipschitz`-Lipschitz operator on
// `domain`, computed from the projected step residual
// r = z - Proj(z - step * F(z)):  |z - z*| <= (1 + step*lipschitz)|r| /
// (step*modulus).
double ResidualDistanceBound(const OperatorFn& op, const Domain& domain,
                             const JointPoint& z, double modulus,
                             double lipschitz);

// Projected forward iteration z <- Proj(z - step F(z)) with
// step = modulus / lipschitz^2, which contracts for any strongly monotone
// Lipschitz operator, including ones with a skew (bilinear) part. Stops once
// the residual bound certifies `distance_tolerance`.
absl::StatusOr<MonotoneSolution> SolveStronglyMonotone(
    const OperatorFn& op, const Domain& domain, JointPoint start,
    double modulus, double lipschitz, double distance_tolerance,
    int64_t max_iterations = 2'000'000);

}  // namespace dpssp

#endif  // DPSSP_CORE_MONOTONE_H_
