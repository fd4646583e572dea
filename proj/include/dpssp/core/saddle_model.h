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

#ifndef DPSSP_CORE_SADDLE_MODEL_H_
#define DPSSP_CORE_SADDLE_MODEL_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"

namespace dpssp {

// weight * |u - anchor|
struct NormTerm {
  double weight = 0.0;
  Vector anchor;
};

// A convex function of one block:
//   u -> (curvature / 2) |u|^2 + <linear, u> + offset + sum_i weight_i |u - a_i|
// Closed under nonnegative mixtures, which makes expectations over finite or
// moment-described distributions exact.
struct SideModel {
  double curvature = 0.0;
  Vector linear;
  double offset = 0.0;
  std::vector<NormTerm> norm_terms;

  static SideModel Zero(int dim) {
    SideModel side;
    side.linear = Vector::Zero(dim);
    return side;
  }

  int dim() const { return static_cast<int>(linear.size()); }
  double Value(const Vector& u) const;
  // Gradient, selecting the zero subgradient for a norm term at its anchor.
  Vector Gradient(const Vector& u) const;

  // this += weight * other
  void Accumulate(const SideModel& other, double weight);
  // this += coefficient * |u - center|^2
  void AddQuadratic(double coefficient, const Vector& center);
};

struct SideMinimum {
  Vector argmin;
  double value = 0.0;
};

// Exact minimization of a side model over a ball or box. Models without norm
// terms reduce to a projection (isotropic quadratic) or a linear minimization;
// models with norm terms are solved exactly in one dimension by enumerating
// the breakpoints and per-piece stationary points. Norm terms in higher
// dimensions are not supported.
absl::StatusOr<SideMinimum> MinimizeSide(const SideModel& side,
                                         const ConstraintSet& set);

// Structural form of a convex-concave objective
//   F(w, theta) = A(w) - C(theta) + coupling * <w, theta>
// where A = primal and C = dual are side models. The coupling term requires
// equal primal and dual dimensions.
struct SaddleModel {
  SideModel primal;
  SideModel dual;
  double coupling = 0.0;

  static SaddleModel Zero(int primal_dim, int dual_dim) {
    return SaddleModel{SideModel::Zero(primal_dim), SideModel::Zero(dual_dim),
                       0.0};
  }

  double Value(const JointPoint& z) const;
  // Stacked saddle operator [grad_w F, -grad_theta F].
  Vector Operator(const JointPoint& z) const;

  void Accumulate(const SaddleModel& other, double weight);
  // Adds coefficient * (|w - c_w|^2 - |theta - c_theta|^2).
  void AddRegularizer(double coefficient, const JointPoint& center);

  bool HasNormTerms() const {
    return !primal.norm_terms.empty() || !dual.norm_terms.empty();
  }
  // Strong convexity / strong concavity modulus.
  double Modulus() const;
  // Lipschitz constant of Operator; nullopt when norm terms are present.
  std::optional<double> OperatorLipschitz() const;
};

struct BestResponse {
  Vector point;
  double value = 0.0;
};

// max_{theta in dual_set} F(w, theta).
absl::StatusOr<BestResponse> DualBestResponse(const SaddleModel& model,
                                              const Vector& w,
                                              const ConstraintSet& dual_set);
// min_{w in primal_set} F(w, theta).
absl::StatusOr<BestResponse> PrimalBestResponse(
    const SaddleModel& model, const Vector& theta,
    const ConstraintSet& primal_set);

// max_theta F(w, theta) - min_w F(w, theta) at z = [w, theta].
absl::StatusOr<double> ModelGap(const SaddleModel& model, const Domain& domain,
                                const JointPoint& z);

struct ModelSaddle {
  JointPoint point;
  // Zero when obtained in closed form.
  double certified_distance = 0.0;
};

// Saddle point of the model over the domain. Uncoupled models split into two
// exact side minimizations. Coupled models without norm terms use the
// per-coordinate stationary point when it is feasible and otherwise fall back
// to the strongly monotone projected iteration.
absl::StatusOr<ModelSaddle> SolveModelSaddle(const SaddleModel& model,
                                             const Domain& domain,
                                             double distance_tolerance = 1e-12);

}  // namespace dpssp

#endif  // DPSSP_CORE_SADDLE_MODEL_H_
