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

#include "dpssp/core/constraint_set.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpssp {

absl::StatusOr<ConstraintSet> ConstraintSet::Ball(Vector center,
                                                  double radius) {
  if (center.size() < 1) {
    return absl::InvalidArgumentError("ball dimension must be at least 1");
  }
  if (!std::isfinite(radius) || radius < 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("ball radius must be finite and nonnegative, got ",
                     radius));
  }
  if (!center.allFinite()) {
    return absl::InvalidArgumentError("ball center must be finite");
  }
  return ConstraintSet(Kind::kBall, std::move(center), Vector(), radius);
}

absl::StatusOr<ConstraintSet> ConstraintSet::Box(Vector lower, Vector upper) {
  if (lower.size() < 1 || lower.size() != upper.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("box bounds must have equal positive dimension, got ",
                     lower.size(), " and ", upper.size()));
  }
  if (!lower.allFinite() || !upper.allFinite()) {
    return absl::InvalidArgumentError("box bounds must be finite");
  }
  if ((upper.array() < lower.array()).any()) {
    return absl::InvalidArgumentError("box is empty: some upper < lower");
  }
  return ConstraintSet(Kind::kBox, std::move(lower), std::move(upper), 0.0);
}

absl::StatusOr<Vector> ConstraintSet::Project(const Vector& u) const {
  if (u.size() != dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "projection dimension mismatch: set has ", dim(), ", point has ",
        u.size()));
  }
  Vector out = u;
  ProjectInPlace(out);
  return out;
}

void ConstraintSet::ProjectInPlace(Vector& u) const {
  if (kind_ == Kind::kBox) {
    u = u.cwiseMax(a_).cwiseMin(b_);
    return;
  }
  const double dist = (u - a_).norm();
  if (dist > radius_) {
    u = a_ + (radius_ / dist) * (u - a_);
  }
}

bool ConstraintSet::Contains(const Vector& u, double tolerance) const {
  if (u.size() != dim()) return false;
  if (kind_ == Kind::kBox) {
    return ((u - a_).array() >= -tolerance).all() &&
           ((b_ - u).array() >= -tolerance).all();
  }
  return (u - a_).norm() <= radius_ + tolerance;
}

Vector ConstraintSet::Center() const {
  if (kind_ == Kind::kBox) return 0.5 * (a_ + b_);
  return a_;
}

double ConstraintSet::Diameter() const {
  if (kind_ == Kind::kBox) return (b_ - a_).norm();
  return 2.0 * radius_;
}

Vector ConstraintSet::MinimizeLinear(const Vector& v) const {
  if (kind_ == Kind::kBox) {
    Vector out = Center();
    for (int i = 0; i < dim(); ++i) {
      if (v[i] > 0.0) out[i] = a_[i];
      if (v[i] < 0.0) out[i] = b_[i];
    }
    return out;
  }
  const double norm = v.norm();
  if (norm == 0.0) return a_;
  return a_ - (radius_ / norm) * v;
}

Vector ConstraintSet::Sample(Rng& rng) const {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (kind_ == Kind::kBox) {
    Vector out(dim());
    for (int i = 0; i < dim(); ++i) {
      out[i] = a_[i] + (b_[i] - a_[i]) * unit(rng);
    }
    return out;
  }
  Vector direction = GaussianVector(dim(), 1.0, rng);
  const double norm = direction.norm();
  if (norm == 0.0) return a_;
  const double scale =
      radius_ * std::pow(unit(rng), 1.0 / static_cast<double>(dim()));
  return a_ + (scale / norm) * direction;
}

absl::StatusOr<Domain> Domain::Create(ConstraintSet primal,
                                      ConstraintSet dual) {
  const double dp = primal.Diameter();
  const double dd = dual.Diameter();
  const double diameter = std::sqrt(dp * dp + dd * dd);
  return Domain(std::move(primal), std::move(dual), diameter);
}

absl::StatusOr<JointPoint> Domain::Project(const JointPoint& z) const {
  absl::StatusOr<Vector> w = primal_.Project(z.w);
  if (!w.ok()) return w.status();
  absl::StatusOr<Vector> theta = dual_.Project(z.theta);
  if (!theta.ok()) return theta.status();
  return JointPoint(*std::move(w), *std::move(theta));
}

bool Domain::Contains(const JointPoint& z, double tolerance) const {
  return primal_.Contains(z.w, tolerance) && dual_.Contains(z.theta, tolerance);
}

}  // namespace dpssp
