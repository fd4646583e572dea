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

#ifndef DPSSP_CORE_JOINT_POINT_H_
#define DPSSP_CORE_JOINT_POINT_H_

#include <Eigen/Dense>

namespace dpssp {

using Vector = Eigen::VectorXd;

// A data point x. Scalar data is stored as a vector of length one.
using DataPoint = Eigen::VectorXd;

// A primal-dual pair [w, theta]. All norms are Euclidean norms of the
// concatenation.
struct JointPoint {
  Vector w;
  Vector theta;

  JointPoint() = default;
  JointPoint(Vector primal, Vector dual)
      : w(std::move(primal)), theta(std::move(dual)) {}

  static JointPoint Zero(int primal_dim, int dual_dim) {
    return JointPoint(Vector::Zero(primal_dim), Vector::Zero(dual_dim));
  }

  // Splits a concatenated vector [w, theta].
  static JointPoint FromStacked(const Vector& stacked, int primal_dim) {
    return JointPoint(stacked.head(primal_dim),
                      stacked.tail(stacked.size() - primal_dim));
  }

  int primal_dim() const { return static_cast<int>(w.size()); }
  int dual_dim() const { return static_cast<int>(theta.size()); }
  int dim() const { return primal_dim() + dual_dim(); }

  Vector Stacked() const {
    Vector out(dim());
    out << w, theta;
    return out;
  }

  double SquaredNorm() const { return w.squaredNorm() + theta.squaredNorm(); }
  double Norm() const { return std::sqrt(SquaredNorm()); }

  JointPoint& operator+=(const JointPoint& other) {
    w += other.w;
    theta += other.theta;
    return *this;
  }
  JointPoint& operator-=(const JointPoint& other) {
    w -= other.w;
    theta -= other.theta;
    return *this;
  }
  JointPoint& operator*=(double scale) {
    w *= scale;
    theta *= scale;
    return *this;
  }
};

inline JointPoint operator+(JointPoint a, const JointPoint& b) { return a += b; }
inline JointPoint operator-(JointPoint a, const JointPoint& b) { return a -= b; }
inline JointPoint operator*(double s, JointPoint a) { return a *= s; }

inline double SquaredDistance(const JointPoint& a, const JointPoint& b) {
  return (a.w - b.w).squaredNorm() + (a.theta - b.theta).squaredNorm();
}
inline double Distance(const JointPoint& a, const JointPoint& b) {
  return std::sqrt(SquaredDistance(a, b));
}

}  // namespace dpssp

#endif  // DPSSP_CORE_JOINT_POINT_H_
