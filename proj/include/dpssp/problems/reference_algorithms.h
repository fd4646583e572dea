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

#ifndef DPSSP_PROBLEMS_REFERENCE_ALGORITHMS_H_
#define DPSSP_PROBLEMS_REFERENCE_ALGORITHMS_H_

#include "dpssp/core/algorithm.h"
#include "dpssp/core/constraint_set.h"
#include "dpssp/core/joint_point.h"

namespace dpssp {

// For the bilinear problem: w = mode of the first half of S, theta = mode of
// the second half. Requires even n; ties go to +1.
Algorithm ModeAlgorithm();

// Splits S into `chunks` equal parts, runs ModeAlgorithm on each, and
// averages the outputs. Requires n divisible by 2 * chunks.
Algorithm AveragedModeAlgorithm(int chunks);

// Ignores the data.
Algorithm ConstantAlgorithm(JointPoint point);

// w = Proj_W(mean(S)), theta = Proj_Theta(mean(S)). Requires the data
// dimension to match both blocks.
Algorithm DatasetMeanAlgorithm(const Domain& domain);

}  // namespace dpssp

#endif  // DPSSP_PROBLEMS_REFERENCE_ALGORITHMS_H_
