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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dpssp/cli/config.h"
#include "dpssp/cli/experiment.h"
#include "gtest/gtest.h"

namespace dpssp {
namespace {

constexpr char kSeparation[] = R"(name: separation
problem:
  kind: bilinear
algorithms:
  - kind: mode
n_grid: [6]
trials: 10000
seed: 1
estimators: [strong, weak]
)";

std::string Message(const absl::Status& status) {
  return std::string(status.message());
}

TEST(ConfigTest, ParsesAValidConfig) {
  const ExperimentConfig c = *ParseExperimentConfig(kSeparation);
  EXPECT_EQ(c.name, "separation");
  EXPECT_EQ(c.problem, ProblemKind::kBilinear);
  ASSERT_EQ(c.algorithms.size(), 1u);
  EXPECT_EQ(c.algorithms[0].label, "mode");
  EXPECT_EQ(c.n_grid, std::vector<int>{6});
  EXPECT_EQ(c.trials, 10000);
  EXPECT_EQ(c.estimators.size(), 2u);
  EXPECT_NE(c.echo.find("bilinear"), std::string::npos);
}

TEST(ConfigTest, RejectsUnknownKeysWithTheirLine) {
  const std::string text = std::string(kSeparation) + "colour: blue\n";
  const absl::Status s = ParseExperimentConfig(text, "x.yaml").status();
  EXPECT_EQ(s.code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(Message(s).find("x.yaml:10:"), std::string::npos) << s;
  EXPECT_NE(Message(s).find("colour"), std::string::npos);

  const std::string nested = R"(problem:
  kind: quadratic_scsc
  params:
    mu: 1.0
    nu: 2.0
algorithms: [{kind: dataset_mean}]
n_grid: [4]
trials: 2
seed: 0
)";
  const absl::Status t = ParseExperimentConfig(nested, "y.yaml").status();
  EXPECT_NE(Message(t).find("y.yaml:5:"), std::string::npos) << t;
  EXPECT_NE(Message(t).find("nu"), std::string::npos);
}

TEST(ConfigTest, RejectsInvalidValues) {
  auto error = [](const std::string& text) {
    return Message(ParseExperimentConfig(text, "c").status());
  };
  EXPECT_NE(error("problem: {kind: bilinear}\nalgorithms: [{kind: mode}]\n"
                  "n_grid: [6]\ntrials: many\nseed: 1\n")
                .find("c:4:"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\nalgorithms: [{kind: mode}]\n"
                  "n_grid: [6]\nseed: 1\n")
                .find("trials"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: cubic}\nalgorithms: [{kind: mode}]\n"
                  "n_grid: [6]\ntrials: 2\nseed: 1\n")
                .find("cubic"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\nalgorithms: [{kind: magic}]\n"
                  "n_grid: [6]\ntrials: 2\nseed: 1\n")
                .find("magic"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\nalgorithms: [{kind: mode}]\n"
                  "n_grid: [6]\ntrials: 1\nseed: 1\nestimators: [weak]\n")
                .find("trials >= 2"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\nalgorithms: [{kind: mode}]\n"
                  "n_grid: [6]\ntrials: 2\nseed: 1\nbudget: {epsilon: -1}\n")
                .find("c:6:"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\n"
                  "algorithms: [{kind: mode}, {kind: mode}]\n"
                  "n_grid: [6]\ntrials: 2\nseed: 1\n")
                .find("duplicate"),
            std::string::npos);
  EXPECT_NE(error("problem: {kind: bilinear}\n"
                  "algorithms: [{kind: regularized_erm}]\n"
                  "n_grid: [6]\ntrials: 2\nseed: 1\n")
                .find("lambda"),
            std::string::npos);
}

TEST(RunExperimentTest, BilinearSeparation) {
  const std::vector<ResultRow> rows =
      *RunExperiment(*ParseExperimentConfig(kSeparation));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].kind, "strong");
  EXPECT_EQ(rows[0].mean, 2.0);
  EXPECT_EQ(rows[0].std_error, 0.0);
  EXPECT_EQ(rows[1].kind, "weak");
  EXPECT_LE(std::abs(rows[1].mean), 0.05);
  EXPECT_EQ(rows[0].d, 2);
  EXPECT_EQ(rows[0].seed, CellSeed(1, 0, 6));
  EXPECT_TRUE(rows[0].error.empty());
}

TEST(RunExperimentTest, ByteIdenticalReruns) {
  const std::string text = R"(problem:
  kind: quadratic_scsc
  primal_dim: 2
  dual_dim: 2
  params: {lipschitz: 4.0, mu: 1.0, gamma: 0.25, bias: 0.2}
algorithms:
  - {kind: recursive_regularization, subroutine: noisy_sgda, lambda_scale: 1.0}
  - {kind: dataset_mean}
n_grid: [512, 256]
budget: {epsilon: 1.0, delta: 1.0e-5}
trials: 5
seed: 3
estimators: [strong, weak, empirical]
)";
  const ExperimentConfig c = *ParseExperimentConfig(text);
  const std::string a = FormatCsv(*RunExperiment(c));
  const std::string b = FormatCsv(*RunExperiment(c));
  EXPECT_EQ(a, b);
  // Sorted by algorithm, n, kind.
  const std::vector<ResultRow> rows = *RunExperiment(c);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0].algorithm, "dataset_mean");
  EXPECT_EQ(rows[0].n, 256);
  EXPECT_EQ(rows[0].kind, "empirical");
  EXPECT_EQ(rows[11].algorithm, "recursive_regularization");
  EXPECT_EQ(rows[11].n, 512);
  EXPECT_EQ(rows[11].kind, "weak");
}

TEST(RunExperimentTest, CellFailuresAreRecordedAndTheRunContinues) {
  const std::string text = R"(problem: {kind: bilinear}
algorithms:
  - {kind: averaged_mode, chunks: 2}
  - {kind: mode}
n_grid: [6, 12]
trials: 4
seed: 2
)";
  const std::vector<ResultRow> rows =
      *RunExperiment(*ParseExperimentConfig(text));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(std::isnan(rows[0].mean));
  EXPECT_NE(rows[0].error.find("trial 0"), std::string::npos);
  EXPECT_TRUE(rows[1].error.empty());
  EXPECT_TRUE(rows[2].error.empty());
  EXPECT_NE(FormatCsv(rows).find("\"INVALID_ARGUMENT"), std::string::npos);
}

TEST(RunExperimentTest, RecursiveRegularizationSweepDecreases) {
  const std::string text = R"(problem:
  kind: quadratic_scsc
  primal_dim: 4
  dual_dim: 4
  params: {lipschitz: 4.0, mu: 1.0, gamma: 0.25, bias: 0.2}
algorithms:
  - {kind: recursive_regularization, subroutine: exact, lambda_scale: 1.0}
n_grid: [256, 512, 1024, 2048, 4096, 8192, 16384]
trials: 50
seed: 7
)";
  const std::vector<ResultRow> rows =
      *RunExperiment(*ParseExperimentConfig(text));
  ASSERT_EQ(rows.size(), 7u);
  for (size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LT(rows[i].mean, rows[i - 1].mean) << rows[i].n;
  }
}

TEST(ReportTest, WritesCsvAndManifest) {
  const std::filesystem::path dir =
      std::filesystem::path(testing::TempDir()) / "dpssp_report";
  std::filesystem::remove_all(dir);
  const ExperimentConfig c = *ParseExperimentConfig(kSeparation);
  const std::vector<ResultRow> rows = *RunExperiment(c);
  ASSERT_TRUE(WriteReport(c, rows, dir.string()).ok());
  std::ifstream csv(dir / "results.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header,
            "problem,algorithm,n,d,epsilon,delta,kind,mean,std_error,trials,"
            "seed,gradient_evaluations,error");
  std::stringstream manifest;
  manifest << std::ifstream(dir / "manifest.json").rdbuf();
  EXPECT_NE(manifest.str().find(kArtifactVersion), std::string::npos);
  EXPECT_NE(manifest.str().find("\"config\""), std::string::npos);
}

TEST(FitTest, ExactPowerLaw) {
  const RateFit fit = *FitLogLog({4, 16, 64}, {0.5, 0.25, 0.125});
  EXPECT_NEAR(fit.slope, -0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(FitTest, ConstantHasZeroSlope) {
  const RateFit fit = *FitLogLog({1, 2, 3, 4}, {7, 7, 7, 7});
  EXPECT_NEAR(fit.slope, 0.0, 1e-15);
  EXPECT_NEAR(fit.intercept, std::log(7.0), 1e-15);
}

TEST(FitTest, RejectsBadInput) {
  EXPECT_FALSE(FitLogLog({1, 2, 3}, {1, 0, 2}).ok());
  EXPECT_FALSE(FitLogLog({1, -2, 3}, {1, 1, 2}).ok());
  EXPECT_FALSE(FitLogLog({1, 2}, {1, 2}).ok());
  EXPECT_FALSE(FitLogLog({2, 2, 2}, {1, 2, 3}).ok());
}

TEST(FitTest, ReadsFilteredColumnsFromCsv) {
  const std::filesystem::path path =
      std::filesystem::path(testing::TempDir()) / "fit.csv";
  {
    std::ofstream out(path);
    out << "algorithm,n,kind,mean,error\n"
        << "a,4,strong,0.5,\n"
        << "a,16,strong,0.25,\n"
        << "a,64,strong,0.125,\n"
        << "a,64,weak,9,\"x, y\"\n"
        << "b,4,strong,1,\n";
  }
  const RateFit fit = *FitRateFromCsv(path.string(), "n", "mean",
                                      {"algorithm=a", "kind=strong"});
  EXPECT_EQ(fit.points, 3);
  EXPECT_NEAR(fit.slope, -0.5, 1e-12);
  EXPECT_FALSE(FitRateFromCsv(path.string(), "n", "nope", {}).ok());
  EXPECT_FALSE(FitRateFromCsv(path.string(), "n", "mean", {"kind"}).ok());
  EXPECT_FALSE(FitRateFromCsv("/nonexistent.csv", "n", "mean", {}).ok());
}

}  // namespace
}  // namespace dpssp
