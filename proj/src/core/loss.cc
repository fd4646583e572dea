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

#include "dpssp/core/loss.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpssp {

double LossSpec::Value(const JointPoint& z, const DataPoint& x) const {
  double out = base->Value(z, x);
  for (const Regularizer& r : regularizers) {
    out += r.coefficient * ((z.w - r.center.w).squaredNorm() -
                            (z.theta - r.center.theta).squaredNorm());
  }
  return out;
}

Vector LossSpec::Operator(const JointPoint& z, const DataPoint& x) const {
  Vector out = base->Operator(z, x);
  if (!regularizers.empty()) out += RegularizerOperator(z);
  return out;
}

Vector LossSpec::RegularizerOperator(const JointPoint& z) const {
  Vector out = Vector::Zero(z.dim());
  const int dw = z.primal_dim();
  for (const Regularizer& r : regularizers) {
    out.head(dw) += 2.0 * r.coefficient * (z.w - r.center.w);
    out.tail(z.dual_dim()) += 2.0 * r.coefficient * (z.theta - r.center.theta);
  }
  return out;
}

SaddleModel LossSpec::Model(const DataPoint& x) const {
  return ApplyRegularizers(base->Model(x), regularizers);
}

SaddleModel LossSpec::EmpiricalModel(const Dataset& data) const {
  SaddleModel model = SaddleModel::Zero(primal_dim(), dual_dim());
  const double weight = 1.0 / static_cast<double>(data.size());
  for (const DataPoint& x : data.samples) {
    model.Accumulate(base->Model(x), weight);
  }
  return ApplyRegularizers(std::move(model), regularizers);
}

double LossSpec::StrongConvexity() const {
  double out = 0.0;
  for (const Regularizer& r : regularizers) out += 2.0 * r.coefficient;
  return out;
}

double LossSpec::RegularizedLipschitzBound(double diameter) const {
  double total = 0.0;
  for (const Regularizer& r : regularizers) total += r.coefficient;
  return lipschitz + 2.0 * diameter * total;
}

SaddleModel ApplyRegularizers(SaddleModel model,
                              const std::vector<Regularizer>& regularizers) {
  for (const Regularizer& r : regularizers) {
    model.AddRegularizer(r.coefficient, r.center);
  }
  return model;
}

absl::StatusOr<LossSpec> Regularize(const LossSpec& loss, double coefficient,
                                    const JointPoint& center) {
  if (!(coefficient >= 0.0) || !std::isfinite(coefficient)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "regularizer coefficient must be finite and nonnegative, got ",
        coefficient));
  }
  if (center.primal_dim() != loss.primal_dim() ||
      center.dual_dim() != loss.dual_dim()) {
    return absl::InvalidArgumentError(
        "regularizer center dimensions do not match the loss");
  }
  LossSpec out = loss;
  out.regularizers.push_back(Regularizer{coefficient, center});
  return out;
}

}  // namespace dpssp
