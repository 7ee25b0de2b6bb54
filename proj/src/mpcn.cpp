#include "pmcmc/mpcn.hpp"

#include <cmath>
#include <utility>

namespace pmcmc {

namespace {
void validate_basis(const GaussianBasis& basis) {
  if (basis.mean.size() != basis.eigenvalues.size())
    throw DimensionError("GaussianBasis: mean/eigenvalue size mismatch");
  for (int k = 0; k < basis.eigenvalues.size(); ++k)
    if (!(basis.eigenvalues[k] > 0.0))
      throw ConfigError("GaussianBasis: eigenvalues must be strictly positive");
}
}  // namespace

GaussianBasis::GaussianBasis(Vector eigs, Vector mean_vec)
    : eigenvalues(std::move(eigs)), mean(std::move(mean_vec)) {
  validate_basis(*this);
}

GaussianBasis::GaussianBasis(Vector eigs) : eigenvalues(std::move(eigs)) {
  mean = Vector::Zero(eigenvalues.size());
  validate_basis(*this);
}

Vector sample_gaussian_kl(const GaussianBasis& basis, RngStream& rng) {
  const int n = basis.dimension();
  Vector w(n);
  for (int k = 0; k < n; ++k)
    w[k] = basis.mean[k] + std::sqrt(basis.eigenvalues[k]) * rng.gaussian();
  return w;
}

Vector pcn_propose(const Vector& q, double rho, const GaussianBasis& basis,
                   RngStream& rng) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw ConfigError("pcn_propose: rho must lie in [0,1]");
  const Vector w = sample_gaussian_kl(basis, rng);
  return rho * q + std::sqrt(1.0 - rho * rho) * w;
}

namespace {

// Shared cloud construction: intermediate point from the aux stream, p
// conditionally independent proposals from the per-slot streams. Slot
// k_cur keeps q; the fresh draws fill the remaining slots in increasing
// order, so draw #i always comes from slot stream i.
ProposalCloud build_pcn_cloud(const Vector& q, int k_cur, double rho, int p,
                              const PotentialTarget& target,
                              std::uint64_t iteration, std::uint64_t seed,
                              const WorkerPool* pool) {
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  const Vector q_bar = pcn_propose(q, rho, target.basis, aux);

  const int slots = p + 1;
  std::vector<Vector> state(slots);
  std::vector<double> masses(slots);
  std::vector<int> slot_of_draw(p);
  for (int j = 0, w = 0; j < slots; ++j)
    if (j != k_cur) slot_of_draw[w++] = j;
  state[k_cur] = q;

  auto fill_slot = [&](std::size_t i) {
    if (i == 0) {
      masses[k_cur] = -target.phi(state[k_cur]);
      return;
    }
    RngStream slot_rng(seed, iteration, static_cast<std::uint32_t>(i));
    const int j = slot_of_draw[i - 1];
    state[j] = pcn_propose(q_bar, rho, target.basis, slot_rng);
    masses[j] = -target.phi(state[j]);
  };
  if (pool != nullptr && pool->worker_count() > 1) {
    pool->run(static_cast<std::size_t>(p) + 1, fill_slot);
  } else {
    for (int i = 0; i <= p; ++i) fill_slot(i);
  }

  ProposalCloud cloud;
  cloud.current = std::move(state[0]);
  cloud.proposals.assign(std::make_move_iterator(state.begin() + 1),
                         std::make_move_iterator(state.end()));
  cloud.log_masses = std::move(masses);
  return cloud;
}

}  // namespace

PcnSampler::PcnSampler(PotentialTarget target, double rho)
    : target_(std::move(target)), rho_(rho) {
  if (!(rho_ >= 0.0 && rho_ <= 1.0))
    throw ConfigError("pcn: rho must lie in [0,1]");
}

StepResult PcnSampler::step(const Vector& q, std::uint64_t iteration,
                            std::uint64_t seed) const {
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  Vector proposal = pcn_propose(q, rho_, target_.basis, aux);
  StepResult out;
  out.log_masses = {-target_.phi(q), -target_.phi(proposal)};
  const AcceptanceVector weights =
      mh_wedge_weights(out.log_masses, 0, {1.0});
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  const int j = categorical_draw(weights, selection.uniform());
  out.state = j == 0 ? q : std::move(proposal);
  out.selected = j;
  out.moved = (j != 0) && (out.state != q);
  return out;
}

MpcnSampler::MpcnSampler(PotentialTarget target, double rho, int p,
                         WeightMode mode, std::vector<double> bar_alpha,
                         const WorkerPool* pool)
    : target_(std::move(target)),
      rho_(rho),
      p_(p),
      mode_(mode),
      bar_alpha_(std::move(bar_alpha)),
      pool_(pool) {
  if (!(rho_ >= 0.0 && rho_ <= 1.0))
    throw ConfigError("mpcn: rho must lie in [0,1]");
  if (p_ < 1) throw ConfigError("mpcn: p must be >= 1");
  if (mode_ == WeightMode::kMhWedge && bar_alpha_.empty())
    bar_alpha_.assign(p_, 1.0 / p_);
}

StepResult MpcnSampler::step(const Vector& q, std::uint64_t iteration,
                             std::uint64_t seed) const {
  ProposalCloud cloud =
      build_pcn_cloud(q, 0, rho_, p_, target_, iteration, seed, pool_);
  const AcceptanceVector weights =
      mode_ == WeightMode::kBarker
          ? barker_weights_or_stay(cloud.log_masses, 0)
          : mh_wedge_weights(cloud.log_masses, 0, bar_alpha_);
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  const int j = categorical_draw(weights, selection.uniform());
  StepResult out;
  out.state = cloud.slot(j);
  out.selected = j;
  out.moved = (j != 0) && (out.state != q);
  out.log_masses = std::move(cloud.log_masses);
  return out;
}

MpcnResamplingSampler::MpcnResamplingSampler(PotentialTarget target, double rho,
                                             int p, const WorkerPool* pool)
    : target_(std::move(target)), rho_(rho), p_(p), pool_(pool) {
  if (!(rho_ >= 0.0 && rho_ <= 1.0))
    throw ConfigError("mpcn-resample: rho must lie in [0,1]");
  if (p_ < 1) throw ConfigError("mpcn-resample: p must be >= 1");
}

ProposalCloud MpcnResamplingSampler::make_cloud(const Vector& q, int k_cur,
                                                std::uint64_t iteration,
                                                std::uint64_t seed) const {
  return build_pcn_cloud(q, k_cur, rho_, p_, target_, iteration, seed, pool_);
}

AcceptanceVector MpcnResamplingSampler::jump_row(const ProposalCloud& cloud,
                                                 int k) const {
  return barker_weights_or_stay(cloud.log_masses, k);
}

StepResult mpcn_step(const Vector& q, double rho, int p,
                     const PotentialTarget& target, std::uint64_t iteration,
                     std::uint64_t seed, const WorkerPool* pool) {
  return MpcnSampler(target, rho, p, WeightMode::kBarker, {}, pool)
      .step(q, iteration, seed);
}

std::vector<Vector> mpcn_resample_step(const Vector& q, double rho, int p,
                                       std::uint64_t n,
                                       const PotentialTarget& target,
                                       std::uint64_t iteration,
                                       std::uint64_t seed,
                                       const WorkerPool* pool) {
  if (n < 1) throw ConfigError("mpcn_resample_step: n must be >= 1");
  MpcnResamplingSampler sampler(target, rho, p, pool);
  const ProposalCloud cloud = sampler.make_cloud(q, 0, iteration, seed);
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  std::vector<Vector> recorded;
  recorded.reserve(n);
  int k_cur = 0;
  for (std::uint64_t l = 0; l < n; ++l) {
    const AcceptanceVector row = sampler.jump_row(cloud, k_cur);
    canonical_jump_draw(row, k_cur, selection.uniform(), k_cur);
    recorded.push_back(cloud.slot(k_cur));
  }
  return recorded;
}

}  // namespace pmcmc
