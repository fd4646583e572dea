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

#ifndef DPSSP_CORE_LOSS_H_
#define DPSSP_CORE_LOSS_H_

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/saddle_model.h"

namespace dpssp {

// An ordered sample of data points. Two datasets are adjacent when they have
// the same size and differ in exactly one position.
struct Dataset {
  std::vector<DataPoint> samples;

  size_t size() const { return samples.size(); }
  const DataPoint& operator[](size_t i) const { return samples[i]; }
};

// A convex-concave per-sample loss f(w, theta; x). Every loss in the library
// is structural: for each x it is a SaddleModel, so values, operators, and
// finite-sum objectives all derive from Model().
class SaddleLoss {
 public:
  virtual ~SaddleLoss() = default;

  virtual int primal_dim() const = 0;
  virtual int dual_dim() const = 0;
  virtual SaddleModel Model(const DataPoint& x) const = 0;

  virtual double Value(const JointPoint& z, const DataPoint& x) const {
    return Model(x).Value(z);
  }
  // Stacked operator g = [grad_w f, -grad_theta f]; the zero subgradient is
  // selected for norm terms at their kinks.
  virtual Vector Operator(const JointPoint& z, const DataPoint& x) const {
    return Model(x).Operator(z);
  }
  // *out += weight * Operator(z, x), without the temporary where possible.
  virtual void AccumulateOperator(const JointPoint& z, const DataPoint& x,
                                  double weight, Vector* out) const {
    *out += weight * Operator(z, x);
  }
};

// A loss defined by a map from data points to per-sample models.
class ModelLoss : public SaddleLoss {
 public:
  using ModelFn = std::function<SaddleModel(const DataPoint&)>;

  ModelLoss(int primal_dim, int dual_dim, ModelFn model)
      : primal_dim_(primal_dim), dual_dim_(dual_dim), model_(std::move(model)) {}

  int primal_dim() const override { return primal_dim_; }
  int dual_dim() const override { return dual_dim_; }
  SaddleModel Model(const DataPoint& x) const override { return model_(x); }

 private:
  int primal_dim_;
  int dual_dim_;
  ModelFn model_;
};

// coefficient * (|w - c_w|^2 - |theta - c_theta|^2)
struct Regularizer {
  double coefficient = 0.0;
  JointPoint center;
};

// A base loss with its Lipschitz constant, optional smoothness, and a stack of
// quadratic regularizers kept in symbolic form.
struct LossSpec {
  std::shared_ptr<const SaddleLoss> base;
  double lipschitz = 0.0;
  std::optional<double> smoothness;
  std::vector<Regularizer> regularizers;

  int primal_dim() const { return base->primal_dim(); }
  int dual_dim() const { return base->dual_dim(); }

  double Value(const JointPoint& z, const DataPoint& x) const;
  Vector Operator(const JointPoint& z, const DataPoint& x) const;
  // Operator of the regularizer stack alone (independent of x).
  Vector RegularizerOperator(const JointPoint& z) const;
  // Per-sample model including the regularizers.
  SaddleModel Model(const DataPoint& x) const;
  // Finite-sum model (1/n) sum_i f(.; x_i) including the regularizers.
  SaddleModel EmpiricalModel(const Dataset& data) const;

  // Strong convexity / strong concavity modulus contributed by the stack,
  // sum_i 2 * coefficient_i.
  double StrongConvexity() const;
  // Lipschitz bound of the regularized loss over a domain of diameter
  // `diameter` when every center lies in the domain: L + 2 * diameter * sum_i
  // coefficient_i.
  double RegularizedLipschitzBound(double diameter) const;
};

// Adds each regularizer of the stack to `model`.
SaddleModel ApplyRegularizers(SaddleModel model,
                              const std::vector<Regularizer>& regularizers);

// Returns a copy of `loss` with (coefficient, center) appended to its stack.
absl::StatusOr<LossSpec> Regularize(const LossSpec& loss, double coefficient,
                                    const JointPoint& center);

}  // namespace dpssp

#endif  // DPSSP_CORE_LOSS_H_
