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

#include "dpssp/problems/reference_algorithms.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpssp {
namespace {

double Mode(const Dataset& data, size_t begin, size_t end) {
  double sum = 0.0;
  for (size_t i = begin; i < end; ++i) sum += data[i][0];
  return sum >= 0.0 ? 1.0 : -1.0;
}

}  // namespace

Algorithm ModeAlgorithm() {
  return AveragedModeAlgorithm(1);
}

Algorithm AveragedModeAlgorithm(int chunks) {
  return [chunks](const Dataset& data,
                  uint64_t) -> absl::StatusOr<AlgorithmOutput> {
    const size_t n = data.size();
    if (chunks < 1 || n == 0 || n % (2 * chunks) != 0) {
      return absl::InvalidArgumentError(absl::StrCat(
          "mode algorithm needs n divisible by ", 2 * chunks, ", got n=", n));
    }
    const size_t size = n / chunks;
    const size_t half = size / 2;
    double w = 0.0, theta = 0.0;
    for (int c = 0; c < chunks; ++c) {
      const size_t begin = c * size;
      w += Mode(data, begin, begin + half);
      theta += Mode(data, begin + half, begin + size);
    }
    return AlgorithmOutput{JointPoint(Vector::Constant(1, w / chunks),
                                      Vector::Constant(1, theta / chunks)),
                           0};
  };
}

Algorithm ConstantAlgorithm(JointPoint point) {
  return [point = std::move(point)](const Dataset&, uint64_t)
             -> absl::StatusOr<AlgorithmOutput> {
    return AlgorithmOutput{point, 0};
  };
}

Algorithm DatasetMeanAlgorithm(const Domain& domain) {
  return [domain](const Dataset& data,
                  uint64_t) -> absl::StatusOr<AlgorithmOutput> {
    if (data.size() == 0) {
      return absl::InvalidArgumentError("empty dataset");
    }
    Vector mean = Vector::Zero(data[0].size());
    for (const DataPoint& x : data.samples) mean += x;
    mean /= static_cast<double>(data.size());
    if (mean.size() != domain.primal_dim() || mean.size() != domain.dual_dim()) {
      return absl::InvalidArgumentError(
          "data dimension must match both blocks of the domain");
    }
    JointPoint z(mean, mean);
    domain.ProjectInPlace(z);
    return AlgorithmOutput{std::move(z), 0};
  };
}

}  // namespace dpssp
