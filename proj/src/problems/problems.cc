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

#include "dpssp/problems/problems.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpssp/core/status_macros.h"

namespace dpssp {
namespace {

// f = coupling * <w, theta>, independent of x.
class BilinearLoss : public SaddleLoss {
 public:
  explicit BilinearLoss(int dim) : dim_(dim) {}
  int primal_dim() const override { return dim_; }
  int dual_dim() const override { return dim_; }
  SaddleModel Model(const DataPoint&) const override {
    SaddleModel m = SaddleModel::Zero(dim_, dim_);
    m.coupling = 1.0;
    return m;
  }
  void AccumulateOperator(const JointPoint& z, const DataPoint&, double weight,
                          Vector* out) const override {
    out->head(dim_) += weight * z.theta;
    out->tail(dim_) -= weight * z.w;
  }

 private:
  int dim_;
};

// f = <w, x> - <theta, x>.
class LinearSaddleLoss : public SaddleLoss {
 public:
  explicit LinearSaddleLoss(int dim) : dim_(dim) {}
  int primal_dim() const override { return dim_; }
  int dual_dim() const override { return dim_; }
  SaddleModel Model(const DataPoint& x) const override {
    SaddleModel m = SaddleModel::Zero(dim_, dim_);
    m.primal.linear = x;
    m.dual.linear = x;
    return m;
  }
  void AccumulateOperator(const JointPoint&, const DataPoint& x, double weight,
                          Vector* out) const override {
    out->head(dim_) += weight * x;
    out->tail(dim_) += weight * x;
  }

 private:
  int dim_;
};

// f = (mu/2)|w - x|^2 - (mu/2)|theta - x|^2 + gamma <w, theta>.
class QuadraticLoss : public SaddleLoss {
 public:
  QuadraticLoss(int dim, double mu, double gamma)
      : dim_(dim), mu_(mu), gamma_(gamma) {}
  int primal_dim() const override { return dim_; }
  int dual_dim() const override { return dim_; }
  SaddleModel Model(const DataPoint& x) const override {
    SaddleModel m = SaddleModel::Zero(dim_, dim_);
    m.primal.AddQuadratic(0.5 * mu_, x);
    m.dual.AddQuadratic(0.5 * mu_, x);
    m.coupling = gamma_;
    return m;
  }
  void AccumulateOperator(const JointPoint& z, const DataPoint& x,
                          double weight, Vector* out) const override {
    out->head(dim_) += weight * (mu_ * (z.w - x) + gamma_ * z.theta);
    out->tail(dim_) += weight * (mu_ * (z.theta - x) - gamma_ * z.w);
  }

 private:
  int dim_;
  double mu_;
  double gamma_;
};

// f = scale * (|w - x| - |theta - x|).
class MedianLoss : public SaddleLoss {
 public:
  explicit MedianLoss(double scale) : scale_(scale) {}
  int primal_dim() const override { return 1; }
  int dual_dim() const override { return 1; }
  SaddleModel Model(const DataPoint& x) const override {
    SaddleModel m = SaddleModel::Zero(1, 1);
    m.primal.norm_terms.push_back(NormTerm{scale_, x});
    m.dual.norm_terms.push_back(NormTerm{scale_, x});
    return m;
  }
  void AccumulateOperator(const JointPoint& z, const DataPoint& x,
                          double weight, Vector* out) const override {
    (*out)[0] += weight * scale_ * Sign(z.w[0] - x[0]);
    (*out)[1] += weight * scale_ * Sign(z.theta[0] - x[0]);
  }

 private:
  static double Sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }
  double scale_;
};

// f = <w, x> with a dual block that the loss ignores.
class PackingLoss : public SaddleLoss {
 public:
  PackingLoss(int primal_dim, int dual_dim)
      : primal_dim_(primal_dim), dual_dim_(dual_dim) {}
  int primal_dim() const override { return primal_dim_; }
  int dual_dim() const override { return dual_dim_; }
  SaddleModel Model(const DataPoint& x) const override {
    SaddleModel m = SaddleModel::Zero(primal_dim_, dual_dim_);
    m.primal.linear = x;
    return m;
  }
  void AccumulateOperator(const JointPoint&, const DataPoint& x, double weight,
                          Vector* out) const override {
    out->head(primal_dim_) += weight * x;
  }

 private:
  int primal_dim_;
  int dual_dim_;
};

Vector SignCubeMean(int dim, double norm, double bias) {
  return Vector::Constant(dim, bias * norm / std::sqrt(dim));
}

// Coordinates are +-norm/sqrt(dim) with P(+) = (1 + bias) / 2.
std::function<DataPoint(Rng&)> SignCubeSampler(int dim, double norm,
                                               double bias) {
  const double scale = norm / std::sqrt(dim);
  const double p_plus = 0.5 * (1.0 + bias);
  return [dim, scale, p_plus](Rng& rng) {
    DataPoint x(dim);
    for (int i = 0; i < dim; ++i) {
      x[i] = UniformUnit(rng) < p_plus ? scale : -scale;
    }
    return x;
  };
}

absl::StatusOr<Domain> BallDomain(int primal_dim, int dual_dim, double radius) {
  DPSSP_ASSIGN_OR_RETURN(ConstraintSet primal,
                         ConstraintSet::Ball(Vector::Zero(primal_dim), radius));
  DPSSP_ASSIGN_OR_RETURN(ConstraintSet dual,
                         ConstraintSet::Ball(Vector::Zero(dual_dim), radius));
  return Domain::Create(std::move(primal), std::move(dual));
}

absl::Status RequireSquare(int primal_dim, int dual_dim, std::string_view kind) {
  if (primal_dim != dual_dim) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(kind), " needs equal primal and dual dimensions, got ",
                     primal_dim, " and ", dual_dim));
  }
  return absl::OkStatus();
}

absl::Status ValidateCommon(const ProblemParams& params) {
  if (!(params.lipschitz > 0.0) || !std::isfinite(params.lipschitz)) {
    return absl::InvalidArgumentError(
        absl::StrCat("lipschitz must be positive, got ", params.lipschitz));
  }
  if (!(params.radius > 0.0) || !std::isfinite(params.radius)) {
    return absl::InvalidArgumentError(
        absl::StrCat("radius must be positive, got ", params.radius));
  }
  if (!(std::abs(params.bias) <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("bias must lie in [-1, 1], got ", params.bias));
  }
  return absl::OkStatus();
}

absl::StatusOr<ProblemSpec> MakeBilinear(int primal_dim, int dual_dim) {
  if (primal_dim != 1 || dual_dim != 1) {
    return absl::InvalidArgumentError("bilinear is defined for d_w = d_theta = 1");
  }
  ProblemSpec p;
  p.name = "bilinear";
  p.kind = ProblemKind::kBilinear;
  p.loss = LossSpec{std::make_shared<BilinearLoss>(1), std::sqrt(2.0), 1.0, {}};
  DPSSP_ASSIGN_OR_RETURN(ConstraintSet box,
                         ConstraintSet::Box(Vector::Constant(1, -1.0),
                                            Vector::Constant(1, 1.0)));
  DPSSP_ASSIGN_OR_RETURN(p.domain, Domain::Create(box, box));
  p.data_dim = 1;
  p.sampler = [](Rng& rng) {
    return DataPoint::Constant(1, UniformUnit(rng) < 0.5 ? -1.0 : 1.0);
  };
  p.population = p.loss.base->Model(DataPoint::Zero(1));
  p.population_saddle = JointPoint::Zero(1, 1);
  p.data_radius = 1.0;
  return p;
}

absl::StatusOr<ProblemSpec> MakeLinearSaddle(int dim, int dual_dim,
                                             const ProblemParams& params) {
  DPSSP_RETURN_IF_ERROR(RequireSquare(dim, dual_dim, "linear_saddle"));
  ProblemSpec p;
  p.name = "linear_saddle";
  p.kind = ProblemKind::kLinearSaddle;
  p.loss = LossSpec{std::make_shared<LinearSaddleLoss>(dim), params.lipschitz,
                    0.0, {}};
  DPSSP_ASSIGN_OR_RETURN(p.domain, BallDomain(dim, dim, params.radius));
  p.data_dim = dim;
  // |g| = sqrt(2) |x|, so data of norm L / sqrt(2) makes L exact.
  const double norm = params.lipschitz / std::sqrt(2.0);
  p.data_radius = norm;
  p.sampler = SignCubeSampler(dim, norm, params.bias);
  const Vector mean = SignCubeMean(dim, norm, params.bias);
  p.population = p.loss.base->Model(mean);
  DPSSP_ASSIGN_OR_RETURN(ModelSaddle saddle,
                         SolveModelSaddle(p.population, p.domain));
  p.population_saddle = std::move(saddle.point);
  return p;
}

absl::StatusOr<ProblemSpec> MakeQuadratic(int dim, int dual_dim,
                                          const ProblemParams& params) {
  DPSSP_RETURN_IF_ERROR(RequireSquare(dim, dual_dim, "quadratic_scsc"));
  if (!(params.mu > 0.0) || !std::isfinite(params.mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("quadratic_scsc needs mu > 0, got ", params.mu));
  }
  if (!(std::abs(params.gamma) < params.mu)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quadratic_scsc needs |gamma| < mu, got gamma=", params.gamma,
        " mu=", params.mu));
  }
  const double mu = params.mu;
  const double r = params.radius;
  // |g_w| <= mu (r + |x|) + |gamma| r on each block and |g| <= sqrt(2) times
  // that; solving for |x| gives the data norm at which L is exact.
  const double norm =
      params.lipschitz / (std::sqrt(2.0) * mu) - r - std::abs(params.gamma) * r / mu;
  if (norm < 0.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "quadratic_scsc: L=", params.lipschitz,
        " is too small for the domain; need L >= sqrt(2)(mu + |gamma|) r = ",
        std::sqrt(2.0) * (mu + std::abs(params.gamma)) * r));
  }
  ProblemSpec p;
  p.name = "quadratic_scsc";
  p.kind = ProblemKind::kQuadraticScsc;
  auto base = std::make_shared<QuadraticLoss>(dim, mu, params.gamma);
  DPSSP_ASSIGN_OR_RETURN(p.domain, BallDomain(dim, dim, r));
  p.data_dim = dim;
  p.modulus = mu;
  if (params.point_mass.has_value()) {
    const Vector x0 = *params.point_mass;
    if (x0.size() != dim) {
      return absl::InvalidArgumentError("point_mass has the wrong dimension");
    }
    if (x0.norm() > norm * (1.0 + 1e-12)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "point_mass norm ", x0.norm(), " exceeds the data norm ", norm,
          " allowed by L"));
    }
    p.sampler = [x0](Rng&) { return x0; };
    p.population = base->Model(x0);
    p.data_radius = x0.norm();
  } else {
    p.sampler = SignCubeSampler(dim, norm, params.bias);
    // Every draw has |x| = norm, so E|x|^2 = norm^2.
    p.population = base->Model(SignCubeMean(dim, norm, params.bias));
    const double mean_sq = SignCubeMean(dim, norm, params.bias).squaredNorm();
    p.population.primal.offset += 0.5 * mu * (norm * norm - mean_sq);
    p.population.dual.offset += 0.5 * mu * (norm * norm - mean_sq);
    p.data_radius = norm;
  }
  const double smoothness = *p.population.OperatorLipschitz();
  p.loss = LossSpec{base, params.lipschitz, smoothness, {}};
  DPSSP_ASSIGN_OR_RETURN(ModelSaddle saddle,
                         SolveModelSaddle(p.population, p.domain, 1e-13));
  p.population_saddle = std::move(saddle.point);
  return p;
}

absl::StatusOr<ProblemSpec> MakeMedian(int primal_dim, int dual_dim,
                                       const ProblemParams& params) {
  if (primal_dim != 1 || dual_dim != 1) {
    return absl::InvalidArgumentError(
        "median_saddle is defined for d_w = d_theta = 1");
  }
  if (params.atoms.empty() ||
      params.atoms.size() != params.probabilities.size()) {
    return absl::InvalidArgumentError(
        "median_saddle needs equally many atoms and probabilities");
  }
  double total = 0.0;
  for (double q : params.probabilities) {
    if (!(q >= 0.0) || !std::isfinite(q)) {
      return absl::InvalidArgumentError("probabilities must be nonnegative");
    }
    total += q;
  }
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("probabilities must not all be zero");
  }
  std::vector<double> probs = params.probabilities;
  for (double& q : probs) q /= total;

  ProblemSpec p;
  p.name = "median_saddle";
  p.kind = ProblemKind::kMedianSaddle;
  const double scale = params.lipschitz / std::sqrt(2.0);
  auto base = std::make_shared<MedianLoss>(scale);
  p.loss = LossSpec{base, params.lipschitz, std::nullopt, {}};
  DPSSP_ASSIGN_OR_RETURN(p.domain, BallDomain(1, 1, params.radius));
  p.data_dim = 1;
  p.population = SaddleModel::Zero(1, 1);
  for (size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) {
      p.population.Accumulate(base->Model(DataPoint::Constant(1, params.atoms[i])),
                              probs[i]);
    }
    p.data_radius = std::max(p.data_radius, std::abs(params.atoms[i]));
  }
  std::vector<double> cumulative(probs.size());
  std::partial_sum(probs.begin(), probs.end(), cumulative.begin());
  const std::vector<double> atoms = params.atoms;
  p.sampler = [atoms, cumulative](Rng& rng) {
    const double u = UniformUnit(rng);
    size_t i = std::upper_bound(cumulative.begin(), cumulative.end(), u) -
               cumulative.begin();
    i = std::min(i, atoms.size() - 1);
    return DataPoint::Constant(1, atoms[i]);
  };
  DPSSP_ASSIGN_OR_RETURN(ModelSaddle saddle,
                         SolveModelSaddle(p.population, p.domain));
  p.population_saddle = std::move(saddle.point);
  return p;
}

absl::StatusOr<ProblemSpec> MakePacking(int primal_dim, int dual_dim,
                                        const ProblemParams& params) {
  const int k = static_cast<int>(params.signs.size());
  DPSSP_ASSIGN_OR_RETURN(Dataset data,
                         PackingDataset(params.signs, params.packing_n,
                                        primal_dim, params.lipschitz));
  ProblemSpec p;
  p.name = "packing_erm";
  p.kind = ProblemKind::kPackingErm;
  auto base = std::make_shared<PackingLoss>(primal_dim, dual_dim);
  p.loss = LossSpec{base, params.lipschitz, 0.0, {}};
  DPSSP_ASSIGN_OR_RETURN(
      ConstraintSet primal,
      ConstraintSet::Ball(Vector::Zero(primal_dim), params.radius));
  DPSSP_ASSIGN_OR_RETURN(ConstraintSet dual,
                         ConstraintSet::Ball(Vector::Zero(dual_dim), 0.0));
  DPSSP_ASSIGN_OR_RETURN(p.domain, Domain::Create(primal, dual));
  p.data_dim = primal_dim;
  p.data_radius = params.lipschitz;
  p.population = p.loss.EmpiricalModel(data);
  Vector w_star = Vector::Zero(primal_dim);
  for (int j = 0; j < k; ++j) {
    w_star[j] = -params.radius / std::sqrt(k) * params.signs[j];
  }
  p.population_saddle = JointPoint(std::move(w_star), Vector::Zero(dual_dim));
  auto samples = std::make_shared<const Dataset>(std::move(data));
  p.sampler = [samples](Rng& rng) {
    return samples->samples[UniformIndex(samples->size(), rng)];
  };
  return p;
}

}  // namespace

absl::StatusOr<ProblemKind> ParseProblemKind(std::string_view name) {
  if (name == "bilinear") return ProblemKind::kBilinear;
  if (name == "linear_saddle") return ProblemKind::kLinearSaddle;
  if (name == "quadratic_scsc") return ProblemKind::kQuadraticScsc;
  if (name == "median_saddle") return ProblemKind::kMedianSaddle;
  if (name == "packing_erm") return ProblemKind::kPackingErm;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown problem kind '", std::string(name), "'"));
}

std::string ProblemKindName(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kBilinear:
      return "bilinear";
    case ProblemKind::kLinearSaddle:
      return "linear_saddle";
    case ProblemKind::kQuadraticScsc:
      return "quadratic_scsc";
    case ProblemKind::kMedianSaddle:
      return "median_saddle";
    case ProblemKind::kPackingErm:
      return "packing_erm";
  }
  return "unknown";
}

absl::StatusOr<ProblemSpec> MakeProblem(ProblemKind kind, int primal_dim,
                                        int dual_dim,
                                        const ProblemParams& params) {
  if (primal_dim < 1 || dual_dim < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimensions must be at least 1, got ", primal_dim, " and ", dual_dim));
  }
  if (kind == ProblemKind::kBilinear) return MakeBilinear(primal_dim, dual_dim);
  DPSSP_RETURN_IF_ERROR(ValidateCommon(params));
  switch (kind) {
    case ProblemKind::kLinearSaddle:
      return MakeLinearSaddle(primal_dim, dual_dim, params);
    case ProblemKind::kQuadraticScsc:
      return MakeQuadratic(primal_dim, dual_dim, params);
    case ProblemKind::kMedianSaddle:
      return MakeMedian(primal_dim, dual_dim, params);
    case ProblemKind::kPackingErm:
      return MakePacking(primal_dim, dual_dim, params);
    default:
      break;
  }
  return absl::InvalidArgumentError("unknown problem kind");
}

absl::StatusOr<Dataset> SampleDataset(const ProblemSpec& problem, int n,
                                      uint64_t seed) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset size must be at least 1, got ", n));
  }
  Rng rng(seed);
  Dataset data;
  data.samples.reserve(n);
  for (int i = 0; i < n; ++i) data.samples.push_back(problem.sampler(rng));
  return data;
}

absl::StatusOr<Dataset> PackingDataset(const std::vector<int>& signs, int n,
                                       int dim, double lipschitz) {
  const int k = static_cast<int>(signs.size());
  if (k < 1 || k > n || k > dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "packing needs 1 <= K <= min(n, d), got K=", k, " n=", n, " d=", dim));
  }
  Dataset data;
  data.samples.assign(n, DataPoint::Zero(dim));
  for (int j = 0; j < k; ++j) {
    if (signs[j] != 1 && signs[j] != -1) {
      return absl::InvalidArgumentError("packing signs must be +1 or -1");
    }
    data.samples[j][j] = lipschitz * signs[j];
  }
  return data;
}

absl::StatusOr<BestResponse> PopulationBestResponse(const ProblemSpec& problem,
                                                    const JointPoint& z,
                                                    Side side) {
  if (z.primal_dim() != problem.domain.primal_dim() ||
      z.dual_dim() != problem.domain.dual_dim()) {
    return absl::InvalidArgumentError("point has the wrong dimensions");
  }
  if (!problem.domain.Contains(z, 1e-9)) {
    return absl::InvalidArgumentError("point lies outside the domain");
  }
  if (side == Side::kDual) {
    return DualBestResponse(problem.population, z.w, problem.domain.dual());
  }
  return PrimalBestResponse(problem.population, z.theta,
                            problem.domain.primal());
}

absl::StatusOr<BestResponse> NumericBestResponse(const SaddleModel& model,
                                                 const Domain& domain,
                                                 const JointPoint& z, Side side,
                                                 double tolerance,
                                                 int max_iterations) {
  // Both sides reduce to minimizing a side model h over one constraint set.
  const bool dual = side == Side::kDual;
  SideModel h = dual ? model.dual : model.primal;
  const ConstraintSet& set = dual ? domain.dual() : domain.primal();
  if (model.coupling != 0.0) {
    if (dual) {
      h.linear -= model.coupling * z.w;
    } else {
      h.linear += model.coupling * z.theta;
    }
  }
  if (!h.norm_terms.empty()) {
    return absl::UnimplementedError(
        "projected gradient best response needs a differentiable side");
  }
  const double step = h.curvature > 0.0
                          ? 1.0 / h.curvature
                          : (set.Diameter() + 1.0) /
                                std::max(h.linear.norm(), 1e-300);
  Vector u = set.Center();
  double residual = INFINITY;
  for (int it = 0; it < max_iterations; ++it) {
    Vector next = u - step * h.Gradient(u);
    set.ProjectInPlace(next);
    residual = (next - u).norm() / step;
    u = std::move(next);
    if (residual <= tolerance) {
      const JointPoint at = dual ? JointPoint(z.w, u) : JointPoint(u, z.theta);
      return BestResponse{u, model.Value(at)};
    }
  }
  return absl::DeadlineExceededError(absl::StrCat(
      "best-response iteration did not converge; last residual ", residual));
}

}  // namespace dpssp
