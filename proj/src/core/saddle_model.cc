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

#include "dpssp/core/saddle_model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/monotone.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {
namespace {

// Sorted one-dimensional atoms with prefix sums, for O(log k) evaluation of
// sum_i p_i |u - a_i|.
class SortedAtoms {
 public:
  explicit SortedAtoms(const std::vector<NormTerm>& terms) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(terms.size());
    for (const NormTerm& t : terms) atoms.emplace_back(t.anchor[0], t.weight);
    std::sort(atoms.begin(), atoms.end());
    anchors_.reserve(atoms.size());
    weight_prefix_.assign(1, 0.0);
    moment_prefix_.assign(1, 0.0);
    for (const auto& [a, p] : atoms) {
      anchors_.push_back(a);
      weight_prefix_.push_back(weight_prefix_.back() + p);
      moment_prefix_.push_back(moment_prefix_.back() + p * a);
    }
  }

  const std::vector<double>& anchors() const { return anchors_; }

  double Value(double u) const {
    const size_t j = CountAtMost(u);
    const double wl = weight_prefix_[j];
    const double ml = moment_prefix_[j];
    const double wr = weight_prefix_.back() - wl;
    const double mr = moment_prefix_.back() - ml;
    return (wl * u - ml) + (mr - wr * u);
  }

  // Derivative of the norm part on an open piece containing u.
  double Slope(double u) const {
    const size_t j = CountAtMost(u);
    return weight_prefix_[j] - (weight_prefix_.back() - weight_prefix_[j]);
  }

 private:
  size_t CountAtMost(double u) const {
    return static_cast<size_t>(
        std::upper_bound(anchors_.begin(), anchors_.end(), u) -
        anchors_.begin());
  }

  std::vector<double> anchors_;
  std::vector<double> weight_prefix_;
  std::vector<double> moment_prefix_;
};

absl::StatusOr<SideMinimum> MinimizeOneDimensional(const SideModel& side,
                                                   const ConstraintSet& set) {
  const double lo = set.kind() == ConstraintSet::Kind::kBall
                        ? set.center()[0] - set.radius()
                        : set.lower()[0];
  const double hi = set.kind() == ConstraintSet::Kind::kBall
                        ? set.center()[0] + set.radius()
                        : set.upper()[0];
  const SortedAtoms atoms(side.norm_terms);
  const double q = side.curvature;
  const double v = side.linear[0];
  auto value = [&](double u) {
    return 0.5 * q * u * u + v * u + side.offset + atoms.Value(u);
  };

  std::vector<double> breakpoints = {lo};
  for (double a : atoms.anchors()) {
    if (a > lo && a < hi) breakpoints.push_back(a);
  }
  breakpoints.push_back(hi);

  std::vector<double> candidates = breakpoints;
  if (q > 0.0) {
    for (size_t j = 0; j + 1 < breakpoints.size(); ++j) {
      const double left = breakpoints[j];
      const double right = breakpoints[j + 1];
      if (!(right > left)) continue;
      const double slope = atoms.Slope(0.5 * (left + right));
      candidates.push_back(std::clamp(-(v + slope) / q, left, right));
    }
  }

  double best_u = candidates.front();
  double best_value = value(best_u);
  for (double u : candidates) {
    const double f = value(u);
    if (f < best_value) {
      best_value = f;
      best_u = u;
    }
  }
  Vector argmin(1);
  argmin[0] = best_u;
  return SideMinimum{std::move(argmin), best_value};
}

}  // namespace

double SideModel::Value(const Vector& u) const {
  double out = 0.5 * curvature * u.squaredNorm() + linear.dot(u) + offset;
  for (const NormTerm& t : norm_terms) out += t.weight * (u - t.anchor).norm();
  return out;
}

Vector SideModel::Gradient(const Vector& u) const {
  Vector g = curvature * u + linear;
  for (const NormTerm& t : norm_terms) {
    const Vector diff = u - t.anchor;
    const double norm = diff.norm();
    if (norm > 0.0) g += (t.weight / norm) * diff;
  }
  return g;
}

void SideModel::Accumulate(const SideModel& other, double weight) {
  curvature += weight * other.curvature;
  linear += weight * other.linear;
  offset += weight * other.offset;
  for (const NormTerm& t : other.norm_terms) {
    norm_terms.push_back(NormTerm{weight * t.weight, t.anchor});
  }
}

void SideModel::AddQuadratic(double coefficient, const Vector& center) {
  curvature += 2.0 * coefficient;
  linear -= 2.0 * coefficient * center;
  offset += coefficient * center.squaredNorm();
}

absl::StatusOr<SideMinimum> MinimizeSide(const SideModel& side,
                                         const ConstraintSet& set) {
  if (side.dim() != set.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("side model dimension ", side.dim(),
                     " does not match constraint set dimension ", set.dim()));
  }
  if (side.curvature < 0.0) {
    return absl::InvalidArgumentError("side model is not convex");
  }
  if (!side.norm_terms.empty()) {
    if (side.dim() != 1) {
      return absl::UnimplementedError(
          "exact minimization with norm terms is only available in one "
          "dimension");
    }
    return MinimizeOneDimensional(side, set);
  }
  Vector argmin;
  if (side.curvature > 0.0) {
    argmin = -side.linear / side.curvature;
    set.ProjectInPlace(argmin);
  } else {
    argmin = set.MinimizeLinear(side.linear);
  }
  const double value = side.Value(argmin);
  return SideMinimum{std::move(argmin), value};
}

double SaddleModel::Value(const JointPoint& z) const {
  double out = primal.Value(z.w) - dual.Value(z.theta);
  if (coupling != 0.0) out += coupling * z.w.dot(z.theta);
  return out;
}

Vector SaddleModel::Operator(const JointPoint& z) const {
  Vector out(z.dim());
  Vector gw = primal.Gradient(z.w);
  Vector gt = dual.Gradient(z.theta);
  if (coupling != 0.0) {
    gw += coupling * z.theta;
    gt -= coupling * z.w;
  }
  out << gw, gt;
  return out;
}

void SaddleModel::Accumulate(const SaddleModel& other, double weight) {
  primal.Accumulate(other.primal, weight);
  dual.Accumulate(other.dual, weight);
  coupling += weight * other.coupling;
}

void SaddleModel::AddRegularizer(double coefficient, const JointPoint& center) {
  primal.AddQuadratic(coefficient, center.w);
  dual.AddQuadratic(coefficient, center.theta);
}

double SaddleModel::Modulus() const {
  return std::min(primal.curvature, dual.curvature);
}

std::optional<double> SaddleModel::OperatorLipschitz() const {
  if (HasNormTerms()) return std::nullopt;
  // Largest singular value of [[a, g], [-g, b]].
  const double a = primal.curvature;
  const double b = dual.curvature;
  const double g = coupling;
  const double mean = 0.5 * (a * a + b * b) + g * g;
  const double half_diff = 0.5 * (a * a - b * b);
  const double cross = g * (a - b);
  return std::sqrt(mean + std::sqrt(half_diff * half_diff + cross * cross));
}

absl::StatusOr<BestResponse> DualBestResponse(const SaddleModel& model,
                                              const Vector& w,
                                              const ConstraintSet& dual_set) {
  if (w.size() != model.primal.dim()) {
    return absl::InvalidArgumentError("primal point has the wrong dimension");
  }
  SideModel shifted = model.dual;
  if (model.coupling != 0.0) shifted.linear -= model.coupling * w;
  DPSSP_ASSIGN_OR_RETURN(SideMinimum m, MinimizeSide(shifted, dual_set));
  return BestResponse{std::move(m.argmin), model.primal.Value(w) - m.value};
}

absl::StatusOr<BestResponse> PrimalBestResponse(
    const SaddleModel& model, const Vector& theta,
    const ConstraintSet& primal_set) {
  if (theta.size() != model.dual.dim()) {
    return absl::InvalidArgumentError("dual point has the wrong dimension");
  }
  SideModel shifted = model.primal;
  if (model.coupling != 0.0) shifted.linear += model.coupling * theta;
  DPSSP_ASSIGN_OR_RETURN(SideMinimum m, MinimizeSide(shifted, primal_set));
  return BestResponse{std::move(m.argmin), m.value - model.dual.Value(theta)};
}

absl::StatusOr<double> ModelGap(const SaddleModel& model, const Domain& domain,
                                const JointPoint& z) {
  DPSSP_ASSIGN_OR_RETURN(BestResponse up,
                         DualBestResponse(model, z.w, domain.dual()));
  DPSSP_ASSIGN_OR_RETURN(BestResponse down,
                         PrimalBestResponse(model, z.theta, domain.primal()));
  return up.value - down.value;
}

absl::StatusOr<ModelSaddle> SolveModelSaddle(const SaddleModel& model,
                                             const Domain& domain,
                                             double distance_tolerance) {
  if (model.primal.dim() != domain.primal_dim() ||
      model.dual.dim() != domain.dual_dim()) {
    return absl::InvalidArgumentError("model and domain dimensions differ");
  }
  if (model.coupling == 0.0) {
    DPSSP_ASSIGN_OR_RETURN(SideMinimum w,
                           MinimizeSide(model.primal, domain.primal()));
    DPSSP_ASSIGN_OR_RETURN(SideMinimum theta,
                           MinimizeSide(model.dual, domain.dual()));
    return ModelSaddle{JointPoint(std::move(w.argmin), std::move(theta.argmin)),
                       0.0};
  }
  if (model.primal.dim() != model.dual.dim()) {
    return absl::InvalidArgumentError(
        "coupled models need equal primal and dual dimensions");
  }
  if (model.HasNormTerms()) {
    return absl::UnimplementedError(
        "coupled models with norm terms have no exact saddle solver");
  }
  // Per coordinate: q_w w + g theta = -v_w and q_t theta - g w = -v_t.
  const double qw = model.primal.curvature;
  const double qt = model.dual.curvature;
  const double g = model.coupling;
  const double det = qw * qt + g * g;
  const Vector& vw = model.primal.linear;
  const Vector& vt = model.dual.linear;
  JointPoint stationary((-qt * vw + g * vt) / det, (-qw * vt - g * vw) / det);
  if (domain.Contains(stationary)) {
    domain.ProjectInPlace(stationary);
    return ModelSaddle{std::move(stationary), 0.0};
  }
  const double modulus = model.Modulus();
  if (!(modulus > 0.0)) {
    return absl::UnimplementedError(
        "coupled model with a boundary saddle needs positive curvature on "
        "both sides");
  }
  const double lipschitz = *model.OperatorLipschitz();
  DPSSP_ASSIGN_OR_RETURN(
      MonotoneSolution solution,
      SolveStronglyMonotone(
          [&model](const JointPoint& z) { return model.Operator(z); }, domain,
          domain.Center(), modulus, lipschitz, distance_tolerance));
  return ModelSaddle{std::move(solution.point), solution.certified_distance};
}

}  // namespace dpssp
