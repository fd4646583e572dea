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

#include "dpssp/cli/config.h"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "dpssp/core/status_macros.h"
#include "yaml-cpp/yaml.h"

namespace dpssp {
namespace {

// Reports errors against the line of a node.
class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  absl::Status Error(const YAML::Node& node, const std::string& message) const {
    const int line = node.Mark().line >= 0 ? node.Mark().line + 1 : 0;
    return absl::InvalidArgumentError(
        absl::StrCat(origin_, ":", line, ": ", message));
  }

  absl::Status ExpectMap(const YAML::Node& node, const std::string& what,
                         const std::set<std::string>& allowed) const {
    if (!node.IsMap()) return Error(node, absl::StrCat(what, " must be a map"));
    for (const auto& entry : node) {
      const std::string key = entry.first.as<std::string>();
      if (!allowed.contains(key)) {
        return Error(entry.first,
                     absl::StrCat("unknown key '", key, "' in ", what,
                                  "; expected one of: ",
                                  absl::StrJoin(allowed, ", ")));
      }
    }
    return absl::OkStatus();
  }

  template <typename T>
  absl::StatusOr<T> Get(const YAML::Node& node, const std::string& what) const {
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      return Error(node, absl::StrCat("invalid value for ", what));
    }
  }

  template <typename T>
  absl::StatusOr<std::vector<T>> GetList(const YAML::Node& node,
                                         const std::string& what) const {
    if (!node.IsSequence()) {
      return Error(node, absl::StrCat(what, " must be a list"));
    }
    std::vector<T> out;
    for (const YAML::Node& item : node) {
      DPSSP_ASSIGN_OR_RETURN(T value, Get<T>(item, what));
      out.push_back(std::move(value));
    }
    return out;
  }

 private:
  std::string origin_;
};

absl::Status ParseParams(const Reader& r, const YAML::Node& node,
                         ProblemParams* params) {
  DPSSP_RETURN_IF_ERROR(r.ExpectMap(
      node, "problem.params",
      {"lipschitz", "radius", "mu", "gamma", "bias", "point_mass", "atoms",
       "probabilities", "signs", "packing_n"}));
  if (node["lipschitz"]) {
    DPSSP_ASSIGN_OR_RETURN(params->lipschitz,
                           r.Get<double>(node["lipschitz"], "lipschitz"));
  }
  if (node["radius"]) {
    DPSSP_ASSIGN_OR_RETURN(params->radius, r.Get<double>(node["radius"], "radius"));
  }
  if (node["mu"]) {
    DPSSP_ASSIGN_OR_RETURN(params->mu, r.Get<double>(node["mu"], "mu"));
  }
  if (node["gamma"]) {
    DPSSP_ASSIGN_OR_RETURN(params->gamma, r.Get<double>(node["gamma"], "gamma"));
  }
  if (node["bias"]) {
    DPSSP_ASSIGN_OR_RETURN(params->bias, r.Get<double>(node["bias"], "bias"));
  }
  if (node["point_mass"]) {
    DPSSP_ASSIGN_OR_RETURN(std::vector<double> x,
                           r.GetList<double>(node["point_mass"], "point_mass"));
    params->point_mass = Eigen::Map<const Vector>(x.data(), x.size());
  }
  if (node["atoms"]) {
    DPSSP_ASSIGN_OR_RETURN(params->atoms,
                           r.GetList<double>(node["atoms"], "atoms"));
  }
  if (node["probabilities"]) {
    DPSSP_ASSIGN_OR_RETURN(
        params->probabilities,
        r.GetList<double>(node["probabilities"], "probabilities"));
  }
  if (node["signs"]) {
    DPSSP_ASSIGN_OR_RETURN(params->signs, r.GetList<int>(node["signs"], "signs"));
  }
  if (node["packing_n"]) {
    DPSSP_ASSIGN_OR_RETURN(params->packing_n,
                           r.Get<int>(node["packing_n"], "packing_n"));
  }
  return absl::OkStatus();
}

const std::set<std::string>& AlgorithmKinds() {
  static const auto* kinds = new std::set<std::string>{
      "mode",       "averaged_mode", "constant",      "dataset_mean",
      "regularized_erm", "noisy_sgda", "local_dp_sgda",
      "recursive_regularization"};
  return *kinds;
}

absl::StatusOr<AlgorithmConfig> ParseAlgorithm(const Reader& r,
                                               const YAML::Node& node) {
  DPSSP_RETURN_IF_ERROR(r.ExpectMap(
      node, "algorithm",
      {"kind", "label", "chunks", "point", "lambda", "lambda_scale",
       "subroutine", "tolerance"}));
  AlgorithmConfig config;
  if (!node["kind"]) return r.Error(node, "algorithm needs a 'kind'");
  DPSSP_ASSIGN_OR_RETURN(config.kind, r.Get<std::string>(node["kind"], "kind"));
  if (!AlgorithmKinds().contains(config.kind)) {
    return r.Error(node["kind"],
                   absl::StrCat("unknown algorithm kind '", config.kind,
                                "'; expected one of: ",
                                absl::StrJoin(AlgorithmKinds(), ", ")));
  }
  config.label = config.kind;
  if (node["label"]) {
    DPSSP_ASSIGN_OR_RETURN(config.label,
                           r.Get<std::string>(node["label"], "label"));
  }
  if (node["chunks"]) {
    DPSSP_ASSIGN_OR_RETURN(config.chunks, r.Get<int>(node["chunks"], "chunks"));
    if (config.chunks < 1) return r.Error(node["chunks"], "chunks must be >= 1");
  }
  if (node["point"]) {
    const YAML::Node point = node["point"];
    DPSSP_RETURN_IF_ERROR(r.ExpectMap(point, "algorithm.point", {"w", "theta"}));
    if (!point["w"] || !point["theta"]) {
      return r.Error(point, "point needs both 'w' and 'theta'");
    }
    DPSSP_ASSIGN_OR_RETURN(config.point_w, r.GetList<double>(point["w"], "w"));
    DPSSP_ASSIGN_OR_RETURN(config.point_theta,
                           r.GetList<double>(point["theta"], "theta"));
  } else if (config.kind == "constant") {
    return r.Error(node, "constant algorithm needs a 'point'");
  }
  if (node["lambda"] && node["lambda_scale"]) {
    return r.Error(node, "give at most one of 'lambda' and 'lambda_scale'");
  }
  if (node["lambda"]) {
    const YAML::Node lambda = node["lambda"];
    if (lambda.IsScalar() && lambda.Scalar() == "auto") {
      config.lambda.mode = LambdaChoice::Mode::kAuto;
    } else {
      config.lambda.mode = LambdaChoice::Mode::kFixed;
      DPSSP_ASSIGN_OR_RETURN(config.lambda.value,
                             r.Get<double>(lambda, "lambda"));
      if (!(config.lambda.value > 0.0)) {
        return r.Error(lambda, "lambda must be positive or 'auto'");
      }
    }
  }
  if (node["lambda_scale"]) {
    config.lambda.mode = LambdaChoice::Mode::kScaled;
    DPSSP_ASSIGN_OR_RETURN(config.lambda.value,
                           r.Get<double>(node["lambda_scale"], "lambda_scale"));
    if (!(config.lambda.value > 0.0)) {
      return r.Error(node["lambda_scale"], "lambda_scale must be positive");
    }
  }
  if (config.kind == "regularized_erm" &&
      config.lambda.mode != LambdaChoice::Mode::kFixed) {
    return r.Error(node, "regularized_erm needs a numeric 'lambda'");
  }
  if (node["subroutine"]) {
    DPSSP_ASSIGN_OR_RETURN(config.subroutine,
                           r.Get<std::string>(node["subroutine"], "subroutine"));
    if (config.subroutine != "exact" && config.subroutine != "noisy_sgda" &&
        config.subroutine != "output_perturbation") {
      return r.Error(node["subroutine"],
                     absl::StrCat("unknown subroutine '", config.subroutine,
                                  "'; expected exact, noisy_sgda or "
                                  "output_perturbation"));
    }
  }
  if (node["tolerance"]) {
    DPSSP_ASSIGN_OR_RETURN(config.tolerance,
                           r.Get<double>(node["tolerance"], "tolerance"));
    if (!(config.tolerance > 0.0)) {
      return r.Error(node["tolerance"], "tolerance must be positive");
    }
  }
  return config;
}

absl::StatusOr<GapKind> ParseGapKind(const Reader& r, const YAML::Node& node) {
  DPSSP_ASSIGN_OR_RETURN(std::string name, r.Get<std::string>(node, "estimator"));
  for (GapKind kind : {GapKind::kStrong, GapKind::kWeak, GapKind::kEmpirical}) {
    if (GapKindName(kind) == name) return kind;
  }
  return r.Error(node, absl::StrCat("unknown estimator '", name,
                                    "'; expected strong, weak or empirical"));
}

}  // namespace

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(
    const std::string& text, const std::string& origin) {
  const Reader r(origin);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(origin, ":", e.mark.line + 1, ": ", e.msg));
  }
  DPSSP_RETURN_IF_ERROR(r.ExpectMap(
      root, "config",
      {"name", "problem", "algorithms", "n_grid", "budget", "trials", "seed",
       "estimators", "output_dir"}));
  ExperimentConfig config;
  for (const char* key : {"problem", "algorithms", "n_grid", "trials", "seed"}) {
    if (!root[key]) {
      return r.Error(root, absl::StrCat("missing required key '", key, "'"));
    }
  }
  if (root["name"]) {
    DPSSP_ASSIGN_OR_RETURN(config.name, r.Get<std::string>(root["name"], "name"));
  }

  const YAML::Node problem = root["problem"];
  DPSSP_RETURN_IF_ERROR(r.ExpectMap(problem, "problem",
                                    {"kind", "primal_dim", "dual_dim", "params"}));
  if (!problem["kind"]) return r.Error(problem, "problem needs a 'kind'");
  DPSSP_ASSIGN_OR_RETURN(std::string kind_name,
                         r.Get<std::string>(problem["kind"], "problem.kind"));
  absl::StatusOr<ProblemKind> kind = ParseProblemKind(kind_name);
  if (!kind.ok()) return r.Error(problem["kind"], std::string(kind.status().message()));
  config.problem = *kind;
  if (problem["primal_dim"]) {
    DPSSP_ASSIGN_OR_RETURN(config.primal_dim,
                           r.Get<int>(problem["primal_dim"], "primal_dim"));
  }
  if (problem["dual_dim"]) {
    DPSSP_ASSIGN_OR_RETURN(config.dual_dim,
                           r.Get<int>(problem["dual_dim"], "dual_dim"));
  }
  if (problem["params"]) {
    DPSSP_RETURN_IF_ERROR(ParseParams(r, problem["params"], &config.params));
  }
  absl::StatusOr<ProblemSpec> spec = MakeProblem(
      config.problem, config.primal_dim, config.dual_dim, config.params);
  if (!spec.ok()) return r.Error(problem, std::string(spec.status().message()));

  const YAML::Node algorithms = root["algorithms"];
  if (!algorithms.IsSequence() || algorithms.size() == 0) {
    return r.Error(algorithms, "algorithms must be a nonempty list");
  }
  std::set<std::string> labels;
  for (const YAML::Node& node : algorithms) {
    DPSSP_ASSIGN_OR_RETURN(AlgorithmConfig algorithm, ParseAlgorithm(r, node));
    if (!labels.insert(algorithm.label).second) {
      return r.Error(node, absl::StrCat("duplicate algorithm label '",
                                        algorithm.label, "'"));
    }
    config.algorithms.push_back(std::move(algorithm));
  }

  DPSSP_ASSIGN_OR_RETURN(config.n_grid, r.GetList<int>(root["n_grid"], "n_grid"));
  if (config.n_grid.empty()) return r.Error(root["n_grid"], "n_grid is empty");
  for (int n : config.n_grid) {
    if (n < 1) return r.Error(root["n_grid"], "n_grid entries must be >= 1");
  }

  if (root["budget"]) {
    const YAML::Node budget = root["budget"];
    DPSSP_RETURN_IF_ERROR(r.ExpectMap(budget, "budget", {"epsilon", "delta"}));
    if (budget["epsilon"]) {
      DPSSP_ASSIGN_OR_RETURN(config.budget.epsilon,
                             r.Get<double>(budget["epsilon"], "epsilon"));
    }
    if (budget["delta"]) {
      DPSSP_ASSIGN_OR_RETURN(config.budget.delta,
                             r.Get<double>(budget["delta"], "delta"));
    }
    const absl::Status valid = ValidateBudget(config.budget);
    if (!valid.ok()) return r.Error(budget, std::string(valid.message()));
  }

  DPSSP_ASSIGN_OR_RETURN(config.trials, r.Get<int>(root["trials"], "trials"));
  if (config.trials < 1) return r.Error(root["trials"], "trials must be >= 1");
  DPSSP_ASSIGN_OR_RETURN(config.seed, r.Get<uint64_t>(root["seed"], "seed"));

  if (root["estimators"]) {
    const YAML::Node estimators = root["estimators"];
    if (!estimators.IsSequence() || estimators.size() == 0) {
      return r.Error(estimators, "estimators must be a nonempty list");
    }
    config.estimators.clear();
    for (const YAML::Node& node : estimators) {
      DPSSP_ASSIGN_OR_RETURN(GapKind kind, ParseGapKind(r, node));
      config.estimators.push_back(kind);
    }
    for (GapKind kind : config.estimators) {
      if (kind == GapKind::kWeak && config.trials < 2) {
        return r.Error(root["trials"], "the weak gap needs trials >= 2");
      }
    }
  }
  if (root["output_dir"]) {
    DPSSP_ASSIGN_OR_RETURN(config.output_dir,
                           r.Get<std::string>(root["output_dir"], "output_dir"));
  }
  YAML::Emitter emitter;
  emitter << root;
  config.echo = emitter.c_str();
  return config;
}

absl::StatusOr<ExperimentConfig> LoadExperimentConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseExperimentConfig(buffer.str(), path);
}

}  // namespace dpssp
