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

#include "dpssp/core/random.h"

namespace dpssp {

uint64_t DeriveSeed(uint64_t seed, uint64_t index, uint64_t stream) {
  uint64_t z = seed;
  for (uint64_t part : {index, stream}) {
    z += 0x9e3779b97f4a7c15ULL + part * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

Vector GaussianVector(int dim, double sigma, Rng& rng) {
  Vector out = Vector::Zero(dim);
  if (sigma == 0.0) return out;
  std::normal_distribution<double> normal(0.0, sigma);
  for (int i = 0; i < dim; ++i) out[i] = normal(rng);
  return out;
}

double UniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t UniformIndex(size_t n, Rng& rng) {
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  return pick(rng);
}

}  // namespace dpssp
