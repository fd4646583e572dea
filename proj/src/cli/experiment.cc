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

#include "dpssp/cli/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "dpssp/core/status_macros.h"
#include "dpssp/eval/gaps.h"
#include "dpssp/problems/reference_algorithms.h"
#include "dpssp/solvers/recursive_regularization.h"
#include "dpssp/solvers/regularized.h"
#include "dpssp/solvers/sgda.h"
#include "json.hpp"

namespace dpssp {
namespace {

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Splits one CSV record, honoring double-quoted fields.
std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

absl::StatusOr<PhaseSubroutine> MakeSubroutine(const std::string& name,
                                               const PrivacyBudget& budget,
                                               double tolerance) {
  if (name == "exact") return ExactPhaseSubroutine(tolerance);
  if (name == "noisy_sgda") return NoisySgdaPhaseSubroutine(budget);
  if (name == "output_perturbation") {
    return OutputPerturbationPhaseSubroutine(budget);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown subroutine ", name));
}

absl::StatusOr<double> RecursionLambda(const AlgorithmConfig& config,
                                       const ProblemSpec& problem,
                                       const PrivacyBudget& budget, int n) {
  const double l = problem.lipschitz();
  const double b = problem.diameter();
  const int dim = problem.domain.dim();
  switch (config.lambda.mode) {
    case LambdaChoice::Mode::kFixed:
      return config.lambda.value;
    case LambdaChoice::Mode::kScaled: {
      const int n_prime = PhaseSampleSize(n);
      if (n_prime < 1) {
        return absl::InvalidArgumentError(absl::StrCat("n too small: ", n));
      }
      return std::max(config.lambda.value * l / (b * std::sqrt(n_prime)),
                      l / (b * std::sqrt(n)));
    }
    case LambdaChoice::Mode::kAuto:
      break;
  }
  if (config.subroutine == "exact") {
    return AutoLambdaNonsmooth(n, dim, l, b, nullptr);
  }
  if (config.subroutine == "noisy_sgda") {
    return AutoLambdaNonsmooth(n, dim, l, b, &budget);
  }
  return AutoLambdaSmooth(n, dim, l, b, budget);
}

ResultRow BaseRow(const ExperimentConfig& config, const AlgorithmConfig& alg,
                  const ProblemSpec& problem, int n, uint64_t seed) {
  ResultRow row;
  row.problem = problem.name;
  row.algorithm = alg.label;
  row.n = n;
  row.d = problem.domain.dim();
  row.epsilon = config.budget.epsilon;
  row.delta = config.budget.delta;
  row.trials = config.trials;
  row.seed = seed;
  return row;
}

}  // namespace

absl::StatusOr<Algorithm> MakeAlgorithm(const AlgorithmConfig& config,
                                        const ProblemSpec& problem,
                                        const PrivacyBudget& budget, int n) {
  const std::string& kind = config.kind;
  if (kind == "mode") return ModeAlgorithm();
  if (kind == "averaged_mode") return AveragedModeAlgorithm(config.chunks);
  if (kind == "dataset_mean") return DatasetMeanAlgorithm(problem.domain);
  if (kind == "constant") {
    if (static_cast<int>(config.point_w.size()) != problem.domain.primal_dim() ||
        static_cast<int>(config.point_theta.size()) !=
            problem.domain.dual_dim()) {
      return absl::InvalidArgumentError(
          "constant point dimensions do not match the problem");
    }
    JointPoint z(Eigen::Map<const Vector>(config.point_w.data(),
                                          config.point_w.size()),
                 Eigen::Map<const Vector>(config.point_theta.data(),
                                          config.point_theta.size()));
    if (!problem.domain.Contains(z, 1e-9)) {
      return absl::InvalidArgumentError("constant point lies outside the domain");
    }
    return ConstantAlgorithm(std::move(z));
  }
  if (kind == "regularized_erm") {
    return RegularizedErmAlgorithm(problem.loss, problem.domain,
                                   config.lambda.value, problem.domain.Center(),
                                   config.tolerance);
  }
  if (kind == "noisy_sgda") {
    DPSSP_ASSIGN_OR_RETURN(
        SgdaPrivacyPlan plan,
        CalibrateNoisySgda(n, problem.domain.dim(), budget, problem.lipschitz(),
                           problem.diameter()));
    return Algorithm([plan, loss = problem.loss, domain = problem.domain](
                         const Dataset& data,
                         uint64_t seed) -> absl::StatusOr<AlgorithmOutput> {
      DPSSP_ASSIGN_OR_RETURN(
          SubroutineResult r,
          NoisySgda(data, loss, plan, domain.Center(), domain, seed));
      return AlgorithmOutput{std::move(r.point), r.gradient_evaluations};
    });
  }
  if (kind == "local_dp_sgda") {
    return Algorithm([budget, loss = problem.loss, domain = problem.domain](
                         const Dataset& data,
                         uint64_t seed) -> absl::StatusOr<AlgorithmOutput> {
      DPSSP_ASSIGN_OR_RETURN(
          SubroutineResult r,
          LocalDpSgda(data, static_cast<int>(data.size()), loss, budget, domain,
                      domain.Center(), seed));
      return AlgorithmOutput{std::move(r.point), r.gradient_evaluations};
    });
  }
  if (kind == "recursive_regularization") {
    DPSSP_ASSIGN_OR_RETURN(double lambda,
                           RecursionLambda(config, problem, budget, n));
    DPSSP_ASSIGN_OR_RETURN(
        PhaseSubroutine subroutine,
        MakeSubroutine(config.subroutine, budget, config.tolerance));
    return RecursiveRegularizationAlgorithm(problem.loss, problem.domain,
                                            std::move(subroutine), lambda);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown algorithm ", kind));
}

uint64_t CellSeed(uint64_t master_seed, int algorithm_index, int n) {
  return DeriveSeed(DeriveSeed(master_seed, algorithm_index, 0x41),
                    static_cast<uint64_t>(n), 0x4e);
}

absl::StatusOr<std::vector<ResultRow>> RunExperiment(
    const ExperimentConfig& config) {
  DPSSP_ASSIGN_OR_RETURN(
      const ProblemSpec problem,
      MakeProblem(config.problem, config.primal_dim, config.dual_dim,
                  config.params));
  const bool keep = std::find(config.estimators.begin(),
                              config.estimators.end(),
                              GapKind::kEmpirical) != config.estimators.end();
  std::vector<ResultRow> rows;
  for (size_t a = 0; a < config.algorithms.size(); ++a) {
    const AlgorithmConfig& alg = config.algorithms[a];
    for (int n : config.n_grid) {
      const uint64_t seed = CellSeed(config.seed, static_cast<int>(a), n);
      absl::StatusOr<TrialOutputs> outputs = [&]() -> absl::StatusOr<TrialOutputs> {
        DPSSP_ASSIGN_OR_RETURN(Algorithm algorithm,
                               MakeAlgorithm(alg, problem, config.budget, n));
        return RunTrials(problem, algorithm, n, config.trials, seed, keep);
      }();
      for (GapKind kind : config.estimators) {
        ResultRow row = BaseRow(config, alg, problem, n, seed);
        row.kind = GapKindName(kind);
        absl::StatusOr<GapReport> report =
            outputs.ok() ? absl::StatusOr<GapReport>(absl::UnknownError(""))
                         : absl::StatusOr<GapReport>(outputs.status());
        if (outputs.ok()) {
          switch (kind) {
            case GapKind::kStrong:
              report = StrongGap(problem, *outputs);
              break;
            case GapKind::kWeak:
              report = WeakGap(problem, *outputs);
              break;
            case GapKind::kEmpirical:
              report = EmpiricalGapReport(problem, *outputs);
              break;
          }
        }
        if (report.ok()) {
          row.mean = report->mean;
          row.std_error = report->std_error;
          row.gradient_evaluations = report->gradient_evaluations;
        } else {
          row.mean = std::numeric_limits<double>::quiet_NaN();
          row.std_error = std::numeric_limits<double>::quiet_NaN();
          row.error = report.status().ToString();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ResultRow& x, const ResultRow& y) {
    return std::tie(x.algorithm, x.n, x.kind) < std::tie(y.algorithm, y.n, y.kind);
  });
  return rows;
}

std::string FormatCsv(const std::vector<ResultRow>& rows) {
  std::string out;
  for (size_t i = 0; i < std::size(kCsvColumns); ++i) {
    absl::StrAppend(&out, i == 0 ? "" : ",", kCsvColumns[i]);
  }
  out += "\n";
  for (const ResultRow& r : rows) {
    absl::StrAppend(&out, CsvField(r.problem), ",", CsvField(r.algorithm), ",",
                    r.n, ",", r.d, ",", FormatDouble(r.epsilon), ",",
                    FormatDouble(r.delta), ",", r.kind, ",",
                    FormatDouble(r.mean), ",", FormatDouble(r.std_error), ",",
                    r.trials, ",", r.seed, ",",
                    FormatDouble(r.gradient_evaluations), ",",
                    CsvField(r.error), "\n");
  }
  return out;
}

absl::Status WriteReport(const ExperimentConfig& config,
                         const std::vector<ResultRow>& rows,
                         const std::string& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot create ", output_dir, ": ", ec.message()));
  }
  const std::filesystem::path dir(output_dir);
  {
    std::ofstream csv(dir / "results.csv", std::ios::binary);
    csv << FormatCsv(rows);
    if (!csv) return absl::InternalError("failed to write results.csv");
  }
  int failed = 0;
  for (const ResultRow& r : rows) failed += r.error.empty() ? 0 : 1;
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  nlohmann::json manifest = {
      {"artifact_version", kArtifactVersion},
      {"name", config.name},
      {"config", config.echo},
      {"results", "results.csv"},
      {"rows", rows.size()},
      {"failed_rows", failed},
      {"created_utc", stamp},
  };
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
  if (!out) return absl::InternalError("failed to write manifest.json");
  return absl::OkStatus();
}

absl::StatusOr<RateFit> FitLogLog(const std::vector<double>& x,
                                  const std::vector<double>& y) {
  if (x.size() != y.size()) {
    return absl::InvalidArgumentError("x and y differ in length");
  }
  if (x.size() < 3) {
    return absl::InvalidArgumentError(
        absl::StrCat("need at least 3 points, got ", x.size()));
  }
  const size_t k = x.size();
  std::vector<double> lx(k), ly(k);
  for (size_t i = 0; i < k; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "nonpositive value at point ", i, ": x=", x[i], " y=", y[i]));
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < k; ++i) {
    mx += lx[i] / k;
    my += ly[i] / k;
  }
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    return absl::InvalidArgumentError("x values are all equal");
  }
  RateFit fit;
  fit.points = static_cast<int>(k);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

absl::StatusOr<RateFit> FitRateFromCsv(const std::string& path,
                                       const std::string& x,
                                       const std::string& y,
                                       const std::vector<std::string>& where) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is empty"));
  }
  const std::vector<std::string> header = SplitCsvLine(line);
  auto column = [&](const std::string& name) -> absl::StatusOr<size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("no column '", name, "' in ", path));
    }
    return static_cast<size_t>(it - header.begin());
  };
  DPSSP_ASSIGN_OR_RETURN(const size_t xi, column(x));
  DPSSP_ASSIGN_OR_RETURN(const size_t yi, column(y));
  std::vector<std::pair<size_t, std::string>> filters;
  for (const std::string& clause : where) {
    const std::vector<std::string> parts =
        absl::StrSplit(clause, absl::MaxSplits('=', 1));
    if (parts.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("filter '", clause, "' is not column=value"));
    }
    DPSSP_ASSIGN_OR_RETURN(const size_t ci, column(parts[0]));
    filters.emplace_back(ci, parts[1]);
  }
  std::vector<double> xs, ys;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          path, ":", line_number, ": expected ", header.size(), " fields"));
    }
    const bool keep = std::all_of(
        filters.begin(), filters.end(),
        [&](const auto& f) { return fields[f.first] == f.second; });
    if (!keep) continue;
    try {
      xs.push_back(std::stod(fields[xi]));
      ys.push_back(std::stod(fields[yi]));
    } catch (const std::exception&) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_number, ": non-numeric value"));
    }
  }
  return FitLogLog(xs, ys);
}

}  // namespace dpssp
