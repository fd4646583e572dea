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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpssp/cli/experiment.h"
#include "dpssp/core/saddle_model.h"
#include "dpssp/eval/gaps.h"
#include "dpssp/eval/probes.h"
#include "dpssp/privacy/privacy.h"
#include "dpssp/problems/problems.h"
#include "dpssp/problems/reference_algorithms.h"
#include "dpssp/solvers/recursive_regularization.h"
#include "dpssp/solvers/regularized.h"
#include "dpssp/solvers/sgda.h"

namespace dpssp {
namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename T>
T Must(absl::StatusOr<T> value) {
  if (!value.ok()) {
    std::fprintf(stderr, "unexpected error: %s\n",
                 value.status().ToString().c_str());
    std::abort();
  }
  return *std::move(value);
}

// The shared SC/SC fixture: d = 4 + 4, L = 4, mu = 1.
ProblemSpec QuadraticFixture() {
  ProblemParams params;
  params.lipschitz = 4.0;
  params.radius = 1.0;
  params.mu = 1.0;
  params.gamma = 0.25;
  params.bias = 0.2;
  return Must(MakeProblem(ProblemKind::kQuadraticScsc, 4, 4, params));
}

ProblemSpec BilinearProblem() {
  return Must(MakeProblem(ProblemKind::kBilinear, 1, 1, {}));
}

ProblemSpec LinearProblem(int dim) {
  ProblemParams params;
  params.lipschitz = 1.0;
  params.radius = 1.0;
  params.bias = 0.3;
  return Must(MakeProblem(ProblemKind::kLinearSaddle, dim, dim, params));
}

std::vector<ProblemSpec> AllFamilies() {
  std::vector<ProblemSpec> out;
  out.push_back(BilinearProblem());
  out.push_back(LinearProblem(3));
  out.push_back(QuadraticFixture());
  out.push_back(Must(MakeProblem(ProblemKind::kMedianSaddle, 1, 1, {})));
  ProblemParams packing;
  packing.signs = {1, -1, 1, 1, -1};
  packing.packing_n = 20;
  out.push_back(Must(MakeProblem(ProblemKind::kPackingErm, 5, 1, packing)));
  return out;
}

// Lambda = L / (B sqrt(n')), the smallest scale of the auto formula.
double ScaledLambda(const ProblemSpec& p, int n) {
  return std::max(p.lipschitz() / (p.diameter() * std::sqrt(PhaseSampleSize(n))),
                  p.lipschitz() / (p.diameter() * std::sqrt(n)));
}

// --- Criteria -------------------------------------------------------------

Outcome Separation() {
  const auto start = Clock::now();
  const ProblemSpec p = BilinearProblem();
  const TrialOutputs outputs =
      Must(RunTrials(p, ModeAlgorithm(), 6, 10000, 20260101));
  const GapReport strong = Must(StrongGap(p, outputs));
  const GapReport weak = Must(WeakGap(p, outputs));
  const double secs = Seconds(start);
  const bool pass = strong.mean == 2.0 && strong.std_error == 0.0 &&
                    std::abs(weak.mean) <= 0.05 && secs < 10.0;
  return {pass, absl::StrFormat(
                    "strong=%.6f (se %.3g, need 2 exactly) |weak|=%.4f (<= "
                    "0.05) time=%.2fs (< 10s)",
                    strong.mean, strong.std_error, std::abs(weak.mean), secs)};
}

Outcome GapLipschitz() {
  int violations = 0, checked = 0;
  double worst = -1e300;
  for (const ProblemSpec& p : AllFamilies()) {
    Rng rng(DeriveSeed(2, checked));
    for (int i = 0; i < 1000; ++i) {
      const JointPoint a = p.domain.Sample(rng);
      const JointPoint b = p.domain.Sample(rng);
      const double lhs =
          std::abs(Must(GapAtPoint(p, a)) - Must(GapAtPoint(p, b)));
      const double rhs = std::sqrt(2.0) * p.lipschitz() * Distance(a, b);
      worst = std::max(worst, lhs - rhs);
      if (lhs > rhs + 1e-9) ++violations;
      ++checked;
    }
  }
  return {violations == 0,
          absl::StrFormat("%d pairs over 5 families, %d violations of "
                          "sqrt(2) L |dz| + 1e-9, max(lhs - rhs)=%.3g",
                          checked, violations, worst)};
}

Outcome RegularizedStability() {
  const auto start = Clock::now();
  const ProblemSpec p = LinearProblem(3);
  const double tol = 1e-10;
  int violations = 0;
  double worst_ratio = 0.0;
  for (double lambda : {0.1, 1.0, 10.0}) {
    for (int n : {50, 500}) {
      const Algorithm erm = RegularizedErmAlgorithm(p.loss, p.domain, lambda,
                                                    p.domain.Center(), tol);
      const StabilityReport r = Must(UasProbe(erm, p, n, 100, 3));
      const double bound = 2 * p.lipschitz() / (lambda * n) + 2 * tol;
      if (r.mean_distance > bound || r.max_distance > bound) ++violations;
      worst_ratio = std::max(worst_ratio, r.max_distance / bound);
    }
  }
  const double secs = Seconds(start);
  return {violations == 0 && secs < 60.0,
          absl::StrFormat("6 (lambda, n) cells x 100 pairs, %d violations of "
                          "2L/(lambda n) + 2 tol, max pair/bound=%.3f "
                          "time=%.2fs (< 60s)",
                          violations, worst_ratio, secs)};
}

Outcome DistanceCertificate() {
  const ProblemSpec p = QuadraticFixture();
  const JointPoint star = *p.population_saddle;
  Rng rng(4);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const JointPoint z = p.domain.Sample(rng);
    const double lhs = SquaredDistance(z, star);
    const double rhs = 2.0 / p.modulus * Must(GapAtPoint(p, z));
    if (lhs > rhs + 1e-9) ++violations;
    worst = std::max(worst, lhs / rhs);
  }
  return {violations == 0,
          absl::StrFormat("1000 points, %d violations of |z - z*|^2 <= "
                          "(2/mu) gap + 1e-9, max ratio=%.4f",
                          violations, worst)};
}

Outcome VarianceBound() {
  const ProblemSpec p = LinearProblem(3);
  bool pass = true;
  std::string detail;
  for (int n : {64, 256}) {
    // Replacing one sample moves each block mean by at most 2 R / n.
    const double delta = std::sqrt(2.0) * 2 * p.data_radius / n;
    const double v = Must(
        VarianceProbe(DatasetMeanAlgorithm(p.domain), p, n, 2000, 5 + n));
    pass &= v <= n * delta * delta;
    absl::StrAppend(&detail, absl::StrFormat("mean n=%d: %.3g <= %.3g; ", n, v,
                                             n * delta * delta));
  }
  const double mode = Must(VarianceProbe(ModeAlgorithm(), BilinearProblem(), 6,
                                         2000, 6));
  pass &= std::abs(mode - 2.0) <= 0.1;
  absl::StrAppend(&detail, absl::StrFormat("mode: %.4f (2 +- 0.1)", mode));
  return {pass, detail};
}

Outcome SgdaBound() {
  int violations = 0, runs = 0;
  double worst = 0.0;
  struct Case {
    ProblemSpec problem;
    JointPoint start;
  };
  const ProblemSpec bilinear = BilinearProblem();
  const ProblemSpec quadratic = QuadraticFixture();
  JointPoint corner(Vector::Ones(4), Vector::Ones(4));
  corner.w /= 2.0;
  corner.theta /= -2.0;
  const std::vector<Case> cases = {
      {bilinear, JointPoint(Vector::Ones(1), Vector::Ones(1))},
      {quadratic, corner}};
  const int64_t iterations = 2000;
  for (const Case& c : cases) {
    const ProblemSpec& p = c.problem;
    const Dataset data = Must(SampleDataset(p, 64, 6));
    const SaddleModel model = p.loss.EmpiricalModel(data);
    const JointPoint star = Must(SolveModelSaddle(model, p.domain)).point;
    const double eta = p.diameter() / (p.lipschitz() * std::sqrt(iterations));
    for (double sigma : {0.0, 0.1}) {
      const double tau2 = p.domain.dim() * sigma * sigma;
      const double bound =
          SquaredDistance(c.start, star) / (2 * eta * iterations) +
          eta * (p.lipschitz() * p.lipschitz() + tau2) / 2;
      for (int s = 0; s < 50; ++s) {
        Rng rng(DeriveSeed(60, s));
        const SubroutineResult r =
            Must(Sgda(FullBatchOracle(data, p.loss), c.start, p.domain,
                      {iterations, eta, sigma}, rng));
        const double residual = model.Value(JointPoint(r.point.w, star.theta)) -
                                model.Value(JointPoint(star.w, r.point.theta));
        if (residual > bound) ++violations;
        worst = std::max(worst, residual / bound);
        ++runs;
      }
    }
  }
  return {violations == 0,
          absl::StrFormat("%d runs (bilinear, quadratic_scsc; sigma 0, 0.1), "
                          "%d violations, max residual/bound=%.4f",
                          runs, violations, worst)};
}

Outcome PhaseInvariants() {
  const auto start = Clock::now();
  const ProblemSpec p = QuadraticFixture();
  const int n = 4096, runs = 200;
  const double b = p.diameter();
  const double lambda = ScaledLambda(p, n);
  std::vector<std::vector<double>> p1, p2;
  for (int s = 0; s < runs; ++s) {
    const uint64_t seed = DeriveSeed(70, s);
    const Dataset data = Must(SampleDataset(p, n, seed));
    const RecursionTrace trace = Must(RecursiveRegularization(
        data, p.loss, ExactPhaseSubroutine(), lambda, p.domain, seed));
    const int phases = trace.schedule.phases;
    p1.resize(phases);
    p2.resize(phases);
    for (int t = 1; t <= phases; ++t) {
      const SaddleModel model = ApplyRegularizers(
          p.population, trace.phase_losses[t - 1].regularizers);
      const JointPoint star = Must(SolveModelSaddle(model, p.domain)).point;
      p1[t - 1].push_back(SquaredDistance(trace.iterates[t], star));
      p2[t - 1].push_back(SquaredDistance(star, trace.iterates[t - 1]));
    }
  }
  bool pass = true;
  std::string detail = absl::StrFormat("lambda=%.4g T=%zu; ", lambda, p1.size());
  auto check = [&](const std::vector<double>& v, double bound,
                   const char* name, int t) {
    double mean = 0.0, sq = 0.0;
    for (double x : v) mean += x / v.size();
    for (double x : v) sq += (x - mean) * (x - mean);
    const double se = std::sqrt(sq / (v.size() - 1.0) / v.size());
    const bool ok = mean <= bound + 3 * se;
    pass &= ok;
    absl::StrAppend(&detail, absl::StrFormat("%s t=%d %.3g<=%.3g; ", name, t,
                                             mean, bound));
  };
  for (size_t t = 1; t <= p1.size(); ++t) {
    check(p1[t - 1], b * b / std::ldexp(1.0, 2 * t), "P1", t);
    check(p2[t - 1], b * b / std::ldexp(1.0, 2 * (t - 1)), "P2", t);
  }
  const double secs = Seconds(start);
  pass &= secs < 300.0;
  absl::StrAppend(&detail, absl::StrFormat("time=%.2fs (< 300s)", secs));
  return {pass, detail};
}

const std::vector<int>& NGrid() {
  static const auto* grid =
      new std::vector<int>{256, 512, 1024, 2048, 4096, 8192, 16384};
  return *grid;
}

struct Sweep {
  std::vector<double> mean, se, evaluations;
};

Sweep RunSweep(const ProblemSpec& p, const PhaseSubroutine& subroutine,
               int trials, uint64_t seed) {
  Sweep out;
  for (int n : NGrid()) {
    const Algorithm a = RecursiveRegularizationAlgorithm(
        p.loss, p.domain, subroutine, ScaledLambda(p, n));
    const GapReport r = Must(StrongGapMc(p, a, n, trials, DeriveSeed(seed, n)));
    out.mean.push_back(r.mean);
    out.se.push_back(r.std_error);
    out.evaluations.push_back(r.gradient_evaluations);
  }
  return out;
}

std::vector<double> GridAsDouble() {
  return std::vector<double>(NGrid().begin(), NGrid().end());
}

Outcome NonPrivateRate() {
  const ProblemSpec p = QuadraticFixture();
  const Sweep sweep = RunSweep(p, ExactPhaseSubroutine(), 50, 80);
  const RateFit fit = Must(FitLogLog(GridAsDouble(), sweep.mean));
  bool bounded = true;
  double worst = 0.0;
  for (size_t i = 0; i < NGrid().size(); ++i) {
    const double n = NGrid()[i];
    const double bound = 20 * std::pow(std::log(n), 1.5) * p.diameter() *
                         p.lipschitz() / std::sqrt(n);
    bounded &= sweep.mean[i] <= bound;
    worst = std::max(worst, sweep.mean[i] / bound);
  }
  const bool pass = fit.slope >= -0.7 && fit.slope <= -0.35 && bounded;
  return {pass, absl::StrFormat("slope=%.3f in [-0.7, -0.35], r2=%.3f, max "
                                "gap/(20 log^1.5(n) BL/sqrt n)=%.2g",
                                fit.slope, fit.r_squared, worst)};
}

// One private path of the rate-shape criterion.
bool CheckPrivatePath(const ProblemSpec& p, const PhaseSubroutine& subroutine,
                      const char* name, const PrivacyBudget& budget,
                      std::string* detail) {
  const Sweep sweep = RunSweep(p, subroutine, 30, 90);
  const RateFit fit = Must(FitLogLog(GridAsDouble(), sweep.mean));
  bool monotone = true;
  for (size_t i = 1; i < sweep.mean.size(); ++i) {
    monotone &= sweep.mean[i] <=
                sweep.mean[i - 1] + std::hypot(sweep.se[i], sweep.se[i - 1]);
  }
  bool within_budget = true;
  double worst = 0.0;
  const double d = p.domain.dim();
  for (size_t i = 0; i < NGrid().size(); ++i) {
    const double n = NGrid()[i];
    const double budget_evals =
        std::min(n * n * std::pow(budget.epsilon, 1.5) /
                     (std::log(n) * std::sqrt(d * std::log(1 / budget.delta))),
                 std::pow(n, 1.5) / std::sqrt(std::log(n)));
    within_budget &= sweep.evaluations[i] <= 4 * budget_evals;
    worst = std::max(worst, sweep.evaluations[i] / budget_evals);
  }
  const bool slope_ok = fit.slope >= -1.1 && fit.slope <= -0.3;
  absl::StrAppend(detail,
                  absl::StrFormat("%s: slope=%.3f%s monotone=%s evals/budget "
                                  "max=%.3g (<= 4); ",
                                  name, fit.slope,
                                  slope_ok ? "" : " (outside [-1.1, -0.3])",
                                  monotone ? "yes" : "no", worst));
  return slope_ok && monotone && within_budget;
}

Outcome PrivateRate() {
  const auto start = Clock::now();
  const ProblemSpec p = QuadraticFixture();
  const PrivacyBudget budget{1.0, 1e-5};
  std::string detail;
  const bool sgda = CheckPrivatePath(p, NoisySgdaPhaseSubroutine(budget),
                                     "noisy_sgda", budget, &detail);
  const bool smooth =
      CheckPrivatePath(p, OutputPerturbationPhaseSubroutine(budget),
                       "output_perturbation", budget, &detail);
  const double secs = Seconds(start);
  absl::StrAppend(&detail, absl::StrFormat("time=%.2fs (< 1800s)", secs));
  return {sgda && smooth && secs < 1800.0, detail};
}

Outcome OutputPerturbationChain() {
  const ProblemSpec p = QuadraticFixture();
  const PrivacyBudget budget{1.0, 1e-5};
  const int n = 4096, runs = 200;
  const double b = p.diameter();
  const double lambda =
      Must(AutoLambdaSmooth(n, p.domain.dim(), p.lipschitz(), b, budget));
  std::vector<std::vector<double>> dist;
  for (int s = 0; s < runs; ++s) {
    const uint64_t seed = DeriveSeed(100, s);
    const Dataset data = Must(SampleDataset(p, n, seed));
    const RecursionTrace trace = Must(RecursiveRegularization(
        data, p.loss, OutputPerturbationPhaseSubroutine(budget), lambda,
        p.domain, seed));
    dist.resize(trace.schedule.phases);
    for (int t = 1; t <= trace.schedule.phases; ++t) {
      Dataset block;
      block.samples.assign(data.samples.begin() + trace.blocks[t - 1].first,
                           data.samples.begin() + trace.blocks[t - 1].second);
      const JointPoint star =
          Must(SolveRegularizedEmpirical(block, trace.phase_losses[t - 1],
                                         p.domain, 1e-13))
              .point;
      dist[t - 1].push_back(SquaredDistance(trace.iterates[t], star));
    }
  }
  bool pass = true;
  std::string detail = absl::StrFormat("lambda=%.4g T=%zu; ", lambda, dist.size());
  for (size_t t = 1; t <= dist.size(); ++t) {
    const std::vector<double>& v = dist[t - 1];
    double mean = 0.0, sq = 0.0;
    for (double x : v) mean += x / v.size();
    for (double x : v) sq += (x - mean) * (x - mean);
    const double se = std::sqrt(sq / (v.size() - 1.0) / v.size());
    const double bound = b * b / (12 * std::ldexp(1.0, 2 * t));
    pass &= mean <= bound + 3 * se;
    absl::StrAppend(&detail,
                    absl::StrFormat("t=%zu %.3g<=%.3g; ", t, mean, bound));
  }
  return {pass, detail};
}

Outcome PlanPreconditions() {
  int plans = 0, failures = 0;
  for (int n : {256, 1024, 4096}) {
    for (double eps : {0.1, 0.5, 1.0}) {
      for (double delta : {1e-5, 1e-8}) {
        for (int d : {2, 10}) {
          const SgdaPrivacyPlan plan =
              Must(CalibrateNoisySgda(n, d, {eps, delta}, 1.0, 1.0));
          ++plans;
          if (!plan.preconditions_ok || !CheckSgdaPreconditions(plan).empty()) {
            ++failures;
          }
        }
      }
    }
  }
  const ProblemSpec p = QuadraticFixture();
  const Dataset data = Must(SampleDataset(p, 1024, 11));
  SgdaPrivacyPlan broken = Must(CalibrateNoisySgda(
      1024, p.domain.dim(), {1.0, 1e-5}, p.lipschitz(), p.diameter()));
  broken.sigma /= 2;
  const absl::StatusOr<SubroutineResult> refused =
      NoisySgda(data, p.loss, broken, p.domain.Center(), p.domain, 1);
  const bool rejected =
      refused.status().code() == absl::StatusCode::kFailedPrecondition;
  return {failures == 0 && rejected,
          absl::StrFormat("%d plans, %d failing preconditions; halved sigma "
                          "%s",
                          plans, failures, rejected ? "rejected" : "ACCEPTED")};
}

Outcome StabilityRiskTightness() {
  ProblemParams params;
  params.signs = {1, -1, -1, 1, 1, -1, 1, 1};
  params.packing_n = 64;
  params.radius = 1.0;
  params.lipschitz = 1.0;
  const int dim = static_cast<int>(params.signs.size());
  const ProblemSpec p =
      Must(MakeProblem(ProblemKind::kPackingErm, dim, 1, params));
  const int n = params.packing_n;
  const Dataset data =
      Must(PackingDataset(params.signs, n, dim, params.lipschitz));
  const double b = p.diameter();
  const double frontier = p.lipschitz() * b * b / n;
  bool pass = true;
  double worst = 0.0;
  for (double lambda : {0.01, 0.03, 0.1, 0.3, 1.0, 3.0}) {
    const Algorithm erm = RegularizedErmAlgorithm(p.loss, p.domain, lambda,
                                                  p.domain.Center(), 1e-12);
    const StabilityReport stability = Must(UasProbe(erm, p, n, 100, 12));
    const JointPoint out = Must(erm(data, 0)).point;
    const double risk = Must(EmpiricalGap(data, p.loss, p.domain, out));
    const double product = stability.mean_distance * risk;
    pass &= product <= frontier;
    worst = std::max(worst, product / frontier);
  }
  return {pass, absl::StrFormat("6 lambdas, max stability*risk / (L B^2 / n)"
                                "=%.3f (<= 1)",
                                worst)};
}

}  // namespace
}  // namespace dpssp

int main() {
  using dpssp::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {{"separation", dpssp::Separation},
       {"gap-lipschitz", dpssp::GapLipschitz},
       {"regularized-stability", dpssp::RegularizedStability},
       {"scsc-distance", dpssp::DistanceCertificate},
       {"variance-bound", dpssp::VarianceBound},
       {"sgda-bound", dpssp::SgdaBound},
       {"phase-invariants", dpssp::PhaseInvariants},
       {"nonprivate-rate", dpssp::NonPrivateRate},
       {"private-rate", dpssp::PrivateRate},
       {"output-perturbation-chain", dpssp::OutputPerturbationChain},
       {"plan-preconditions", dpssp::PlanPreconditions},
       {"stability-risk-tightness", dpssp::StabilityRiskTightness}};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].second();
    failed += o.pass ? 0 : 1;
    std::printf("AC%-2zu %s %-26s %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed;
}
