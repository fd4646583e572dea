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

#include "dpssp/privacy/privacy.h"

#include <cmath>
#include <limits>

#include "dpssp/core/random.h"
#include "gtest/gtest.h"

namespace dpssp {
namespace {

TEST(BudgetTest, Validation) {
  EXPECT_TRUE(ValidateBudget({1.0, 1e-5}).ok());
  EXPECT_TRUE(ValidateBudget({0.1, 1.0}).ok());
  EXPECT_FALSE(ValidateBudget({0.0, 1e-5}).ok());
  EXPECT_FALSE(ValidateBudget({1.0, 0.0}).ok());
  EXPECT_FALSE(ValidateBudget({1.0, 1.5}).ok());
  EXPECT_FALSE(
      ValidateBudget({std::numeric_limits<double>::infinity(), 0.1}).ok());
}

TEST(CalibrateNoisySgdaTest, IterationCount) {
  const auto plan = CalibrateNoisySgda(1024, 16, {1.0, 1e-5}, 1.0, 1.0);
  ASSERT_TRUE(plan.ok());
  // n^2 eps^2 / (32 d log(1/delta)) = 1048576 / (512 * 11.5129) ~ 177.9.
  const double second = 1024.0 * 1024.0 / (32.0 * 16.0 * std::log(1e5));
  EXPECT_NEAR(second, 177.9, 0.05);
  EXPECT_EQ(plan->iterations, 128);
}

TEST(CalibrateNoisySgdaTest, BatchSizeIsTheSmallestMeetingTheAccountant) {
  const auto plan = CalibrateNoisySgda(1024, 16, {1.0, 1e-5}, 1.0, 1.0);
  ASSERT_TRUE(plan.ok());
  // 1024 * sqrt(1/128) = 90.51, so the smallest admissible batch is 91.
  EXPECT_EQ(plan->batch_size, 91);
  EXPECT_TRUE(plan->preconditions_ok);
  EXPECT_EQ(plan->GradientEvaluations(), 128 * 91);
  // One fewer sample per batch would violate T >= n^2 eps / m^2.
  SgdaPrivacyPlan smaller = *plan;
  smaller.batch_size = 90;
  EXPECT_FALSE(CheckSgdaPreconditions(smaller).empty());
}

TEST(CalibrateNoisySgdaTest, QuarterEpsilonBatchViolatesTheAccountant) {
  // m = floor(n sqrt(eps / (4T))) gives n^2 eps / m^2 >= 4T > T.
  SgdaPrivacyPlan plan = *CalibrateNoisySgda(1024, 16, {1.0, 1e-5}, 1.0, 1.0);
  plan.batch_size = static_cast<int>(1024 * std::sqrt(1.0 / 512));
  EXPECT_EQ(plan.batch_size, 45);
  EXPECT_FALSE(CheckSgdaPreconditions(plan).empty());
}

TEST(CalibrateNoisySgdaTest, SigmaAndStepFormulas) {
  const PrivacyBudget budget{0.5, 1e-6};
  const auto plan = CalibrateNoisySgda(4096, 8, budget, 2.0, 0.7);
  ASSERT_TRUE(plan.ok());
  const double t = plan->iterations;
  EXPECT_NEAR(plan->sigma,
              2.0 * 2.0 * std::sqrt(t * std::log(1e6)) / (4096 * 0.5), 1e-15);
  EXPECT_NEAR(plan->step_size, 0.7 / (2.0 * std::sqrt(t)), 1e-15);
}

TEST(CalibrateNoisySgdaTest, HugeEpsilonVanishingNoise) {
  const auto plan = CalibrateNoisySgda(1024, 16, {1e6, 1e-5}, 1.0, 1.0);
  ASSERT_TRUE(plan.ok());
  EXPECT_LT(plan->sigma, 1e-6);
  EXPECT_EQ(plan->iterations, 128);
  EXPECT_EQ(plan->batch_size, 1024);
}

TEST(CalibrateNoisySgdaTest, Errors) {
  EXPECT_FALSE(CalibrateNoisySgda(7, 1, {1.0, 1e-5}, 1.0, 1.0).ok());
  EXPECT_FALSE(CalibrateNoisySgda(100, 1, {1.0, 1e-5}, 1.0, 0.0).ok());
  EXPECT_FALSE(CalibrateNoisySgda(100, 1, {-1.0, 1e-5}, 1.0, 1.0).ok());
}

TEST(CalibrateNoisySgdaTest, PlansSatisfyPreconditionsOnAGrid) {
  for (int n : {64, 1000, 20000}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      for (double delta : {1e-3, 1e-6}) {
        for (int d : {1, 8, 50}) {
          const auto plan = CalibrateNoisySgda(n, d, {eps, delta}, 1.3, 2.0);
          ASSERT_TRUE(plan.ok());
          EXPECT_TRUE(plan->preconditions_ok)
              << n << " " << eps << " " << delta << " " << d << ": "
              << (plan->reasons.empty() ? "" : plan->reasons[0]);
          const double t = plan->iterations;
          const double m = plan->batch_size;
          EXPECT_GE(plan->sigma * (1 + 1e-12),
                    kAccountantConstant * 1.3 * std::sqrt(t * std::log(1 / delta)) /
                        (n * eps));
          EXPECT_GE(t * (1 + 1e-12), double(n) * n * eps / (m * m));
          EXPECT_GE(plan->batch_size, 1);
          EXPECT_LE(plan->batch_size, n);
        }
      }
    }
  }
}

TEST(CalibrateNoisySgdaTest, HalvedSigmaFailsTheCheck) {
  SgdaPrivacyPlan plan = *CalibrateNoisySgda(2048, 4, {1.0, 1e-5}, 1.0, 1.0);
  ASSERT_TRUE(plan.preconditions_ok);
  plan.sigma /= 2;
  EXPECT_EQ(CheckSgdaPreconditions(plan).size(), 1u);
}

TEST(OutputPerturbationSigmaTest, Formula) {
  const auto sigma = OutputPerturbationSigma(1, 1.0, 100, {1.0, 0.1}, 1.0);
  ASSERT_TRUE(sigma.ok());
  EXPECT_NEAR(*sigma, 8 * std::sqrt(std::log(20.0)) / 200, 1e-15);
  // 8 sqrt(2.9957) / 200 = 0.069233.
  EXPECT_NEAR(*sigma, 0.069233, 1e-6);
}

TEST(OutputPerturbationSigmaTest, NextPhaseHalvesSigma) {
  for (int t = 1; t < 10; ++t) {
    const double a = *OutputPerturbationSigma(t, 0.3, 50, {0.7, 1e-5}, 2.0);
    const double b = *OutputPerturbationSigma(t + 1, 0.3, 50, {0.7, 1e-5}, 2.0);
    EXPECT_DOUBLE_EQ(b, a / 2);
  }
}

TEST(OutputPerturbationSigmaTest, Errors) {
  EXPECT_FALSE(OutputPerturbationSigma(1, 1.0, 100, {1.0, 2.0}, 1.0).ok());
  EXPECT_FALSE(OutputPerturbationSigma(0, 1.0, 100, {1.0, 0.1}, 1.0).ok());
  EXPECT_FALSE(OutputPerturbationSigma(1, 0.0, 100, {1.0, 0.1}, 1.0).ok());
  EXPECT_FALSE(OutputPerturbationSigma(1, 1.0, 0, {1.0, 0.1}, 1.0).ok());
}

TEST(OutputPerturbationSigmaTest, NoiseEnergyIsDimTimesVariance) {
  const double sigma = *OutputPerturbationSigma(2, 0.5, 40, {1.0, 1e-5}, 1.0);
  const int dim = 6;
  const int draws = 10000;
  Rng rng(8);
  double total = 0.0;
  for (int i = 0; i < draws; ++i) {
    total += GaussianVector(dim, sigma, rng).squaredNorm();
  }
  EXPECT_NEAR(total / draws, dim * sigma * sigma, 0.05 * dim * sigma * sigma);
}

TEST(ComposeParallelTest, MaxOfComponents) {
  auto same = ComposeParallel({{1, 1e-5}, {1, 1e-5}}, true);
  ASSERT_TRUE(same.ok());
  EXPECT_EQ(same->epsilon, 1.0);
  EXPECT_EQ(same->delta, 1e-5);
  auto mixed = ComposeParallel({{0.5, 1e-6}, {1, 1e-5}}, true);
  EXPECT_EQ(mixed->epsilon, 1.0);
  EXPECT_EQ(mixed->delta, 1e-5);
  auto empty = ComposeParallel({}, true);
  EXPECT_EQ(empty->epsilon, 0.0);
  EXPECT_EQ(empty->delta, 0.0);
}

TEST(ComposeParallelTest, RequiresDisjointness) {
  EXPECT_FALSE(ComposeParallel({{1, 1e-5}}, false).ok());
}

TEST(RegularizedSensitivityTest, Formula) {
  EXPECT_DOUBLE_EQ(*RegularizedSensitivity(1.0, 1.0, 100), 0.02);
  EXPECT_DOUBLE_EQ(*RegularizedSensitivity(2.0, 0.5, 10), 0.8);
  EXPECT_EQ(*RegularizedSensitivity(
                1.0, std::numeric_limits<double>::infinity(), 10),
            0.0);
  EXPECT_LT(*RegularizedSensitivity(1.0, 1e300, 10), 1e-299);
  EXPECT_FALSE(RegularizedSensitivity(1.0, 0.0, 10).ok());
}

TEST(LocalDpSigmaTest, Formula) {
  EXPECT_NEAR(*LocalDpSigma({2.0, 1e-4}, 3.0),
              3.0 * std::sqrt(std::log(1e4)) / 2.0, 1e-15);
}

}  // namespace
}  // namespace dpssp
