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

#ifndef DPSSP_SOLVERS_SGDA_H_
#define DPSSP_SOLVERS_SGDA_H_

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"
#include "dpssp/core/random.h"
#include "dpssp/privacy/privacy.h"

namespace dpssp {

struct SubroutineResult {
  JointPoint point;
  int64_t gradient_evaluations = 0;
  bool noise_injected = false;
};

// Returns an unbiased estimate of the saddle operator at z. May draw from rng
// and must add the number of per-sample gradient evaluations it used to
// *evaluations.
using StochasticOracle =
    std::function<Vector(const JointPoint& z, Rng& rng, int64_t* evaluations)>;

struct SgdaOptions {
  int64_t iterations = 1;
  double step_size = 0.0;
  // Standard deviation of the Gaussian noise added to every estimate.
  double noise_sigma = 0.0;
};

// Projected SGDA z_{t+1} = Proj(z_t - eta (oracle(z_t) + xi_t)) for
// t = 0..T-1, returning the average of z_0, ..., z_{T-1}. Per iteration the
// oracle draws first and the noise second.
absl::StatusOr<SubroutineResult> Sgda(const StochasticOracle& oracle,
                                      const JointPoint& start,
                                      const Domain& domain,
                                      const SgdaOptions& options, Rng& rng);

// Oracle averaging the loss operator over `batch_size` indices drawn uniformly
// with replacement from `data`. The dataset and loss must outlive the oracle.
StochasticOracle MinibatchOracle(const Dataset& data, const LossSpec& loss,
                                 int batch_size);

// Oracle returning the full-batch empirical operator (no randomness).
StochasticOracle FullBatchOracle(const Dataset& data, const LossSpec& loss);

// Noisy minibatch SGDA driven by a calibrated privacy plan. Refuses to run
// unless the plan's preconditions hold for its actual values and the plan was
// calibrated for this dataset size.
absl::StatusOr<SubroutineResult> NoisySgda(const Dataset& data,
                                           const LossSpec& loss,
                                           const SgdaPrivacyPlan& plan,
                                           const JointPoint& start,
                                           const Domain& domain, uint64_t seed);

// One-pass local-DP SGDA: consumes the first n samples of `stream` in a
// seeded random order (without replacement), privatizing each per-sample
// operator with N(0, sigma^2 I), sigma = L sqrt(log(1/delta)) / eps, and
// uses eta = B / (sqrt(n d log(1/delta)) L eps) with B the domain diameter and
// d the joint dimension. Fails if the stream holds fewer than n samples.
absl::StatusOr<SubroutineResult> LocalDpSgda(const Dataset& stream, int n,
                                             const LossSpec& loss,
                                             const PrivacyBudget& budget,
                                             const Domain& domain,
                                             const JointPoint& start,
                                             uint64_t seed);

}  // namespace dpssp

#endif  // DPSSP_SOLVERS_SGDA_H_
