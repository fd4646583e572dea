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

#ifndef DPSSP_PROBLEMS_PROBLEMS_H_
#define DPSSP_PROBLEMS_PROBLEMS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"
#include "dpssp/core/random.h"
#include "dpssp/core/saddle_model.h"

namespace dpssp {

enum class ProblemKind {
  kBilinear,
  kLinearSaddle,
  kQuadraticScsc,
  kMedianSaddle,
  kPackingErm,
};

absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name);
std::string ProblemKindName(ProblemKind kind);

// Parameters shared by the problem families. Fields irrelevant to a family
// are ignored.
struct ProblemParams {
  // Lipschitz constant L of the per-sample loss over the domain. The bilinear
  // family has L = sqrt(2) fixed by its box domain.
  double lipschitz = 1.0;
  // Radius of the primal and dual balls (for packing_erm: the primal radius).
  double radius = 1.0;
  // quadratic_scsc curvature and coupling; requires 0 <= gamma < mu.
  double mu = 1.0;
  double gamma = 0.0;
  // linear_saddle / quadratic_scsc: each coordinate sign is +1 with
  // probability (1 + bias) / 2.
  double bias = 0.0;
  // quadratic_scsc: replaces the sign-cube distribution by a point mass.
  std::optional<Vector> point_mass;
  // median_saddle: finite support and probabilities (normalized internally).
  std::vector<double> atoms = {-0.5, 0.0, 0.5};
  std::vector<double> probabilities = {0.25, 0.5, 0.25};
  // packing_erm: signs sigma (size K) and dataset size n >= K.
  std::vector<int> signs;
  int packing_n = 0;
};

// A synthetic stochastic saddle-point problem with an exact population
// objective. Immutable once built; samplers draw only from the passed engine.
struct ProblemSpec {
  std::string name;
  ProblemKind kind = ProblemKind::kBilinear;
  LossSpec loss;
  Domain domain;
  int data_dim = 1;
  std::function<DataPoint(Rng&)> sampler;
  // F_D in structural form.
  SaddleModel population;
  std::optional<JointPoint> population_saddle;
  // SC/SC modulus of F_D (0 when merely convex-concave).
  double modulus = 0.0;
  // Maximum norm of a data point; used by analytic influence bounds.
  double data_radius = 0.0;

  double PopulationValue(const JointPoint& z) const {
    return population.Value(z);
  }
  double lipschitz() const { return loss.lipschitz; }
  double diameter() const { return domain.diameter(); }
};

// Families:
//   bilinear        f = w * theta on [-1, 1]^2, x ~ Unif{-1, +1} (unused).
//   linear_saddle   f = <w, x> - <theta, x> on radius-r balls, x on a biased
//                   sign cube of norm L / sqrt(2).
//   quadratic_scsc  f = (mu/2)|w - x|^2 - (mu/2)|theta - x|^2 + gamma <w, theta>
//                   on radius-r balls; data norm chosen so that L is exact.
//   median_saddle   f = (L / sqrt(2)) (|w - x| - |theta - x|), one-dimensional,
//                   x on a finite support.
//   packing_erm     f = <w, x> on the radius-B ball with a singleton dual set;
//                   x uniform over the packing dataset S_sigma.
absl::StatusOr<ProblemSpec> MakeProblem(ProblemKind kind, int primal_dim,
                                        int dual_dim,
                                        const ProblemParams& params);

// n i.i.d. draws; bit-reproducible given the seed.
absl::StatusOr<Dataset> SampleDataset(const ProblemSpec& problem, int n,
                                      uint64_t seed);

// S_sigma = {L sigma_1 e_1, ..., L sigma_K e_K, 0, ..., 0} with n entries.
absl::StatusOr<Dataset> PackingDataset(const std::vector<int>& signs, int n,
                                       int dim, double lipschitz);

enum class Side { kPrimal, kDual };

// Exact best response of F_D against z on the given side: the dual side
// returns argmax_theta F_D(w, theta), the primal side argmin_w F_D(w, theta).
absl::StatusOr<BestResponse> PopulationBestResponse(const ProblemSpec& problem,
                                                    const JointPoint& z,
                                                    Side side);

// Best response of `model` computed by projected gradient iterations until the
// projected-gradient residual drops below `tolerance`. Used to cross-check
// the exact best responses. Fails with the last residual when the budget runs
// out.
absl::StatusOr<BestResponse> NumericBestResponse(const SaddleModel& model,
                                                 const Domain& domain,
                                                 const JointPoint& z, Side side,
                                                 double tolerance = 1e-9,
                                                 int max_iterations = 100000);

}  // namespace dpssp

#endif  // DPSSP_PROBLEMS_PROBLEMS_H_
