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

#ifndef DPSSP_CORE_ALGORITHM_H_
#define DPSSP_CORE_ALGORITHM_H_

#include <cstdint>
#include <functional>

#include "absl/status/statusor.h"
#include "dpssp/core/joint_point.h"
#include "dpssp/core/loss.h"

namespace dpssp {

struct AlgorithmOutput {
  JointPoint point;
  int64_t gradient_evaluations = 0;
};

// A (possibly randomized) map from a dataset to a joint point. All internal
// randomness must derive from `seed`, so equal (dataset, seed) pairs give
// identical outputs.
using Algorithm =
    std::function<absl::StatusOr<AlgorithmOutput>(const Dataset&, uint64_t)>;

}  // namespace dpssp

#endif  // DPSSP_CORE_ALGORITHM_H_
