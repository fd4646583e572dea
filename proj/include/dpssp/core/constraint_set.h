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

#ifndef DPSSP_CORE_CONSTRAINT_SET_H_
#define DPSSP_CORE_CONSTRAINT_SET_H_

#include "absl/status/statusor.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/random.h"

namespace dpssp {

// A compact convex set with an exact Euclidean projection: either a ball
// {u : |u - center| <= radius} or an axis-aligned box [lower, upper].
class ConstraintSet {
 public:
  enum class Kind { kBall, kBox };

  // Zero-dimensional placeholder, to be assigned before use.
  ConstraintSet() = default;

  static absl::StatusOr<ConstraintSet> Ball(Vector center, double radius);
  static absl::StatusOr<ConstraintSet> Box(Vector lower, Vector upper);

  Kind kind() const { return kind_; }
  int dim() const { return static_cast<int>(a_.size()); }

  // Ball accessors.
  const Vector& center() const { return a_; }
  double radius() const { return radius_; }
  // Box accessors.
  const Vector& lower() const { return a_; }
  const Vector& upper() const { return b_; }

  absl::StatusOr<Vector> Project(const Vector& u) const;
  // Same as Project without the dimension check.
  void ProjectInPlace(Vector& u) const;

  bool Contains(const Vector& u, double tolerance = 1e-12) const;

  // Chebyshev center.
  Vector Center() const;
  // Exact maximum pairwise distance.
  double Diameter() const;

  // argmin_{u in set} <v, u>. Ties (zero components of v) resolve to the
  // center coordinate.
  Vector MinimizeLinear(const Vector& v) const;

  // Uniform sample from the set.
  Vector Sample(Rng& rng) const;

 private:
  ConstraintSet(Kind kind, Vector a, Vector b, double radius)
      : kind_(kind), a_(std::move(a)), b_(std::move(b)), radius_(radius) {}

  Kind kind_ = Kind::kBall;
  Vector a_;
  Vector b_;
  double radius_ = 0.0;
};

// The product W x Theta with its diameter B.
class Domain {
 public:
  // Zero-dimensional placeholder, to be assigned before use.
  Domain() = default;
  static absl::StatusOr<Domain> Create(ConstraintSet primal,
                                       ConstraintSet dual);

  const ConstraintSet& primal() const { return primal_; }
  const ConstraintSet& dual() const { return dual_; }
  int primal_dim() const { return primal_.dim(); }
  int dual_dim() const { return dual_.dim(); }
  int dim() const { return primal_dim() + dual_dim(); }

  // Exact max distance between two points of W x Theta.
  double diameter() const { return diameter_; }

  JointPoint Center() const {
    return JointPoint(primal_.Center(), dual_.Center());
  }

  absl::StatusOr<JointPoint> Project(const JointPoint& z) const;
  void ProjectInPlace(JointPoint& z) const {
    primal_.ProjectInPlace(z.w);
    dual_.ProjectInPlace(z.theta);
  }
  bool Contains(const JointPoint& z, double tolerance = 1e-12) const;
  JointPoint Sample(Rng& rng) const {
    Vector w = primal_.Sample(rng);
    return JointPoint(std::move(w), dual_.Sample(rng));
  }

 private:
  Domain(ConstraintSet primal, ConstraintSet dual, double diameter)
      : primal_(std::move(primal)), dual_(std::move(dual)),
        diameter_(diameter) {}

  ConstraintSet primal_;
  ConstraintSet dual_;
  double diameter_ = 0.0;
};

}  // namespace dpssp

#endif  // DPSSP_CORE_CONSTRAINT_SET_H_
