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

#ifndef DPSSP_CORE_RANDOM_H_
#define DPSSP_CORE_RANDOM_H_

#include <cstdint>
#include <random>

#include "dpssp/core/joint_point.h"

namespace dpssp {

// Every random draw in the library flows through an explicitly seeded engine
// owned by the caller.
using Rng = std::mt19937_64;

// Mixes (seed, index, stream) into an independent 64-bit seed using the
// SplitMix64 finalizer. Used to derive per-trial and per-phase seeds.
uint64_t DeriveSeed(uint64_t seed, uint64_t index, uint64_t stream = 0);

// Draws a vector of i.i.d. N(0, sigma^2) entries. sigma == 0 returns zeros
// without consuming randomness.
Vector GaussianVector(int dim, double sigma, Rng& rng);

// Uniform double in [0, 1) from the top 53 bits of one draw.
double UniformUnit(Rng& rng);

// Uniform index in [0, n).
size_t UniformIndex(size_t n, Rng& rng);

}  // namespace dpssp

#endif  // DPSSP_CORE_RANDOM_H_
