#ifndef PMCMC_MPCN_HPP
#define PMCMC_MPCN_HPP

#include <functional>
#include <vector>

#include "pmcmc/kernel.hpp"
#include "pmcmc/parallel.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc {

// Truncated eigen-decomposition of a Gaussian covariance operator,
// expressed in its own eigenbasis (diagonal covariance). General
// covariances are handled by pre-whitening at configuration time.
struct GaussianBasis {
  Vector eigenvalues;
  Vector mean;

  GaussianBasis() = default;
  GaussianBasis(Vector eigs, Vector mean_vec);
  explicit GaussianBasis(Vector eigs);

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
};

// Target of the form mu(dq) ~ exp(-phi(q)) mu0(dq) with Gaussian base
// measure mu0 = N(mean, diag(eigenvalues)). phi must be safe to evaluate
// concurrently; the normalization constant is never needed.
struct PotentialTarget {
  std::function<double(const Vector&)> phi;
  GaussianBasis basis;
};

// Karhunen-Loeve draw: coordinate k is mean_k + sqrt(eig_k) * xi_k.
Vector sample_gaussian_kl(const GaussianBasis& basis, RngStream& rng);

// Crank-Nicolson proposal rho*q + sqrt(1-rho^2)*w with w ~ N(mean, C).
Vector pcn_propose(const Vector& q, double rho, const GaussianBasis& basis,
                   RngStream& rng);

// Classical single-proposal pCN: one direct Crank-Nicolson proposal from
// the current state, Metropolis acceptance min(1, exp(phi(q) - phi(q'))).
// The multiproposal sampler below does not reduce to this at p = 1 (it
// keeps the intermediate point and Barker selection), so the classical
// kernel is provided as its own benchmark baseline.
class PcnSampler : public Sampler {
 public:
  PcnSampler(PotentialTarget target, double rho);

  int dim() const override { return target_.basis.dimension(); }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override;

 private:
  PotentialTarget target_;
  double rho_;
};

// Multiproposal pCN sampler: one intermediate pCN point, p conditionally
// independent pCN proposals from it, Barker selection on -phi.
class MpcnSampler : public Sampler {
 public:
  MpcnSampler(PotentialTarget target, double rho, int p,
              WeightMode mode = WeightMode::kBarker,
              std::vector<double> bar_alpha = {},
              const WorkerPool* pool = nullptr);

  int dim() const override { return target_.basis.dimension(); }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override;

  const PotentialTarget& target() const { return target_; }
  double rho() const { return rho_; }
  int proposal_count() const { return p_; }

 private:
  PotentialTarget target_;
  double rho_;
  int p_;
  WeightMode mode_;
  std::vector<double> bar_alpha_;
  const WorkerPool* pool_;
};

// Proposal-resampling variant: the cloud is rebuilt around the occupied
// slot and n index jumps are drawn per cloud with the same Barker row.
class MpcnResamplingSampler : public ResamplingSampler {
 public:
  MpcnResamplingSampler(PotentialTarget target, double rho, int p,
                        const WorkerPool* pool = nullptr);

  int dim() const override { return target_.basis.dimension(); }
  int proposal_count() const override { return p_; }
  ProposalCloud make_cloud(const Vector& q, int k_cur, std::uint64_t iteration,
                           std::uint64_t seed) const override;
  AcceptanceVector jump_row(const ProposalCloud& cloud, int k) const override;

 private:
  PotentialTarget target_;
  double rho_;
  int p_;
  const WorkerPool* pool_;
};

// Single mpCN iteration (one cloud, one selection).
StepResult mpcn_step(const Vector& q, double rho, int p,
                     const PotentialTarget& target, std::uint64_t iteration,
                     std::uint64_t seed, const WorkerPool* pool = nullptr);

// One resampling iteration: one cloud, n recorded jump states. The last
// entry is the next chain state.
std::vector<Vector> mpcn_resample_step(const Vector& q, double rho, int p,
                                       std::uint64_t n,
                                       const PotentialTarget& target,
                                       std::uint64_t iteration,
                                       std::uint64_t seed,
                                       const WorkerPool* pool = nullptr);

}  // namespace pmcmc

#endif
