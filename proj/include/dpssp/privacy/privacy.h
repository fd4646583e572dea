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

#ifndef DPSSP_PRIVACY_PRIVACY_H_
#define DPSSP_PRIVACY_PRIVACY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace dpssp {

struct PrivacyBudget {
  double epsilon = 1.0;
  double delta = 1e-5;
};

// OK iff epsilon is finite and positive and delta lies in (0, 1].
absl::Status ValidateBudget(const PrivacyBudget& budget);

// The moments-accountant constant c, used for both the calibration and the
// check.
inline constexpr double kAccountantConstant = 2.0;

// Calibrated parameters for noisy minibatch SGDA on a dataset of size n.
struct SgdaPrivacyPlan {
  // Inputs the plan was calibrated for.
  int n = 0;
  int dim = 0;
  double lipschitz = 0.0;
  double initial_distance = 0.0;
  PrivacyBudget budget;

  int64_t iterations = 0;
  int batch_size = 0;
  double step_size = 0.0;
  double sigma = 0.0;
  bool preconditions_ok = false;
  // Failed preconditions, empty when preconditions_ok.
  std::vector<std::string> reasons;

  int64_t GradientEvaluations() const { return iterations * batch_size; }
};

// T = max(1, floor(min{n/8, n^2 eps^2 / (32 d log(1/delta))})),
// m = min(n, ceil(n sqrt(eps / T))), sigma = c L sqrt(T log(1/delta)) / (n eps),
// eta = initial_distance / (L sqrt(T)), with the preconditions evaluated.
absl::StatusOr<SgdaPrivacyPlan> CalibrateNoisySgda(int n, int dim,
                                                   const PrivacyBudget& budget,
                                                   double lipschitz,
                                                   double initial_distance);

// Evaluates, for the plan's actual values,
//   sigma >= c L sqrt(T log(1/delta)) / (n eps)   and   T >= n^2 eps / m^2,
// plus the structural bounds T >= 1, 1 <= m <= n, sigma >= 0. Returns the
// failed conditions.
std::vector<std::string> CheckSgdaPreconditions(const SgdaPrivacyPlan& plan);

// sigma_t = 8 L sqrt(log(2/delta)) / (2^t lambda n' eps). Fails when
// log(2/delta) <= 0 or an argument is out of range.
absl::StatusOr<double> OutputPerturbationSigma(int phase, double lambda,
                                               int n_prime,
                                               const PrivacyBudget& budget,
                                               double lipschitz);

// Parallel composition over disjoint partitions: (max eps_i, max delta_i).
// The empty list composes to (0, 0). Requires attested disjointness.
absl::StatusOr<PrivacyBudget> ComposeParallel(
    const std::vector<PrivacyBudget>& budgets, bool disjointness_attested);

// Uniform argument stability 2L / (lambda n) of the saddle point of a
// lambda-SC/SC regularized empirical objective.
absl::StatusOr<double> RegularizedSensitivity(double lipschitz,
                                              double lambda_total, int n);

// Per-sample noise scale L sqrt(log(1/delta)) / eps of one-pass local-DP SGDA.
absl::StatusOr<double> LocalDpSigma(const PrivacyBudget& budget,
                                    double lipschitz);

}  // namespace dpssp

#endif  // DPSSP_PRIVACY_PRIVACY_H_
