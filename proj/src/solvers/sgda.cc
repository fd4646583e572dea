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

#include "dpssp/solvers/sgda.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {

absl::StatusOr<SubroutineResult> Sgda(const StochasticOracle& oracle,
                                      const JointPoint& start,
                                      const Domain& domain,
                                      const SgdaOptions& options, Rng& rng) {
  if (options.iterations < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("SGDA needs T >= 1, got ", options.iterations));
  }
  if (!(options.step_size > 0.0) || !(options.noise_sigma >= 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "SGDA needs eta > 0 and sigma >= 0, got eta=", options.step_size,
        " sigma=", options.noise_sigma));
  }
  const int dw = start.primal_dim();
  const int dt = start.dual_dim();
  JointPoint z = start;
  domain.ProjectInPlace(z);
  JointPoint sum = JointPoint::Zero(dw, dt);
  SubroutineResult result;
  result.noise_injected = options.noise_sigma > 0.0;
  for (int64_t t = 0; t < options.iterations; ++t) {
    sum += z;
    Vector g = oracle(z, rng, &result.gradient_evaluations);
    if (options.noise_sigma > 0.0) {
      g += GaussianVector(z.dim(), options.noise_sigma, rng);
    }
    z.w -= options.step_size * g.head(dw);
    z.theta -= options.step_size * g.tail(dt);
    domain.ProjectInPlace(z);
  }
  sum *= 1.0 / static_cast<double>(options.iterations);
  result.point = std::move(sum);
  return result;
}

StochasticOracle MinibatchOracle(const Dataset& data, const LossSpec& loss,
                                 int batch_size) {
  return [&data, &loss, batch_size](const JointPoint& z, Rng& rng,
                                    int64_t* evaluations) {
    Vector g = Vector::Zero(z.dim());
    const double weight = 1.0 / batch_size;
    for (int i = 0; i < batch_size; ++i) {
      loss.base->AccumulateOperator(z, data[UniformIndex(data.size(), rng)],
                                    weight, &g);
    }
    *evaluations += batch_size;
    if (!loss.regularizers.empty()) g += loss.RegularizerOperator(z);
    return g;
  };
}

StochasticOracle FullBatchOracle(const Dataset& data, const LossSpec& loss) {
  return [&data, &loss](const JointPoint& z, Rng&, int64_t* evaluations) {
    Vector g = Vector::Zero(z.dim());
    const double weight = 1.0 / static_cast<double>(data.size());
    for (const DataPoint& x : data.samples) {
      loss.base->AccumulateOperator(z, x, weight, &g);
    }
    *evaluations += static_cast<int64_t>(data.size());
    if (!loss.regularizers.empty()) g += loss.RegularizerOperator(z);
    return g;
  };
}

absl::StatusOr<SubroutineResult> NoisySgda(const Dataset& data,
                                           const LossSpec& loss,
                                           const SgdaPrivacyPlan& plan,
                                           const JointPoint& start,
                                           const Domain& domain,
                                           uint64_t seed) {
  if (static_cast<int>(data.size()) != plan.n) {
    return absl::FailedPreconditionError(
        absl::StrCat("plan was calibrated for n=", plan.n,
                     " but the dataset has ", data.size(), " samples"));
  }
  const std::vector<std::string> reasons = CheckSgdaPreconditions(plan);
  if (!plan.preconditions_ok || !reasons.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "refusing to run noisy SGDA: privacy preconditions fail: ",
        reasons.empty() ? "plan marked as failing" : absl::StrJoin(reasons, "; ")));
  }
  Rng rng(seed);
  return Sgda(MinibatchOracle(data, loss, plan.batch_size), start, domain,
              SgdaOptions{plan.iterations, plan.step_size, plan.sigma}, rng);
}

absl::StatusOr<SubroutineResult> LocalDpSgda(const Dataset& stream, int n,
                                             const LossSpec& loss,
                                             const PrivacyBudget& budget,
                                             const Domain& domain,
                                             const JointPoint& start,
                                             uint64_t seed) {
  if (n < 1) {
    return absl::InvalidArgumentError("local-DP SGDA needs n >= 1");
  }
  if (static_cast<int>(stream.size()) < n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "stream holds ", stream.size(), " samples, fewer than n=", n));
  }
  DPSSP_ASSIGN_OR_RETURN(const double sigma,
                         LocalDpSigma(budget, loss.lipschitz));
  const double log_inv_delta = std::log(1.0 / budget.delta);
  if (!(log_inv_delta > 0.0)) {
    return absl::InvalidArgumentError("local-DP SGDA needs delta < 1");
  }
  const double step = domain.diameter() /
                      (std::sqrt(n * domain.dim() * log_inv_delta) *
                       loss.lipschitz * budget.epsilon);
  if (!(step > 0.0) || !std::isfinite(step)) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid local-DP step size ", step));
  }
  Rng rng(seed);
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  size_t next = 0;
  StochasticOracle oracle = [&](const JointPoint& z, Rng&,
                                int64_t* evaluations) {
    Vector g = loss.Operator(z, stream[order[next++]]);
    ++*evaluations;
    return g;
  };
  return Sgda(oracle, start, domain, SgdaOptions{n, step, sigma}, rng);
}

}  // namespace dpssp
