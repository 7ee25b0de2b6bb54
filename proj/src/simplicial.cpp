#include "pmcmc/simplicial.hpp"

#include <cmath>
#include <utility>

namespace pmcmc {

SimplexBasis regular_simplex(int p, int N) {
  if (p < 1) throw ConfigError("regular_simplex: p must be >= 1");
  if (p > N) throw DimensionError("regular_simplex: p must not exceed N");
  Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(p, p, 0.5);
  gram.diagonal().setOnes();
  const Eigen::MatrixXd chol = gram.llt().matrixL();
  SimplexBasis basis;
  basis.vertices = Eigen::MatrixXd::Zero(N, p);
  basis.vertices.topRows(p) = chol.transpose();
  return basis;
}

Eigen::MatrixXd haar_orthogonal(int N, RngStream& rng) {
  if (N < 1) throw ConfigError("haar_orthogonal: N must be >= 1");
  Eigen::MatrixXd z(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = rng.gaussian();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < N; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

double EdgeLengthLaw::sample(RngStream& rng) const {
  switch (kind) {
    case Kind::kConstant:
      return a;
    case Kind::kLogNormal:
      return std::exp(a + b * rng.gaussian());
    case Kind::kGamma: {
      // Marsaglia-Tsang; shapes below one are boosted through U^(1/a).
      double shape = a;
      double boost = 1.0;
      if (shape < 1.0) {
        boost = std::pow(1.0 - rng.uniform(), 1.0 / shape);
        shape += 1.0;
      }
      const double d = shape - 1.0 / 3.0;
      const double c = 1.0 / std::sqrt(9.0 * d);
      for (;;) {
        double x, vcb;
        do {
          x = rng.gaussian();
          vcb = 1.0 + c * x;
        } while (vcb <= 0.0);
        const double v3 = vcb * vcb * vcb;
        const double u = 1.0 - rng.uniform();
        if (std::log(u) < 0.5 * x * x + d - d * v3 + d * std::log(v3))
          return boost * d * v3 * b;
      }
    }
  }
  throw ConfigError("EdgeLengthLaw: unknown kind");
}

EdgeLengthLaw EdgeLengthLaw::constant(double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("EdgeLengthLaw: lambda must be >= 0");
  return {Kind::kConstant, lambda, 0.0};
}

EdgeLengthLaw EdgeLengthLaw::log_normal(double mu, double sigma) {
  if (!(sigma >= 0.0)) throw ConfigError("EdgeLengthLaw: sigma must be >= 0");
  return {Kind::kLogNormal, mu, sigma};
}

EdgeLengthLaw EdgeLengthLaw::gamma(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw ConfigError("EdgeLengthLaw: shape and scale must be positive");
  return {Kind::kGamma, shape, scale};
}

StepResult simplicial_step(const Vector& q0, const SimplexBasis& basis,
                           const EdgeLengthLaw& law,
                           const std::function<double(const Vector&)>& log_target,
                           WeightMode mode, const std::vector<double>& bar_alpha,
                           std::uint64_t iteration, std::uint64_t seed,
                           const WorkerPool* pool) {
  const int p = basis.p();
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  const double lambda = law.sample(aux);
  const Eigen::MatrixXd rotation = haar_orthogonal(basis.ambient_dim(), aux);
  const Eigen::MatrixXd offsets = lambda * (rotation * basis.vertices);

  ProposalCloud cloud;
  cloud.current = q0;
  cloud.proposals.resize(p);
  cloud.log_masses.resize(p + 1);
  auto fill_slot = [&](std::size_t j) {
    if (j == 0) {
      cloud.log_masses[0] = log_target(q0);
      return;
    }
    cloud.proposals[j - 1] = q0 + offsets.col(static_cast<int>(j) - 1);
    cloud.log_masses[j] = log_target(cloud.proposals[j - 1]);
  };
  if (pool != nullptr && pool->worker_count() > 1) {
    pool->run(static_cast<std::size_t>(p) + 1, fill_slot);
  } else {
    for (int j = 0; j <= p; ++j) fill_slot(j);
  }

  const AcceptanceVector weights =
      mode == WeightMode::kBarker
          ? barker_weights_or_stay(cloud.log_masses, 0)
          : mh_wedge_weights(cloud.log_masses, 0, bar_alpha);
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  const int j = categorical_draw(weights, selection.uniform());
  StepResult out;
  out.state = cloud.slot(j);
  out.selected = j;
  out.moved = (j != 0) && (out.state != q0);
  out.log_masses = std::move(cloud.log_masses);
  return out;
}

SimplicialSampler::SimplicialSampler(std::function<double(const Vector&)> log_target,
                                     int dim, int p, EdgeLengthLaw law,
                                     WeightMode mode,
                                     std::vector<double> bar_alpha,
                                     const WorkerPool* pool)
    : log_target_(std::move(log_target)),
      basis_(regular_simplex(p, dim)),
      law_(law),
      mode_(mode),
      bar_alpha_(std::move(bar_alpha)),
      pool_(pool) {
  if (mode_ == WeightMode::kMhWedge && bar_alpha_.empty())
    bar_alpha_.assign(p, 1.0 / p);
}

StepResult SimplicialSampler::step(const Vector& q, std::uint64_t iteration,
                                   std::uint64_t seed) const {
  return simplicial_step(q, basis_, law_, log_target_, mode_, bar_alpha_,
                         iteration, seed, pool_);
}

}  // namespace pmcmc
