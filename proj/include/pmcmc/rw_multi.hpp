#ifndef PMCMC_RW_MULTI_HPP
#define PMCMC_RW_MULTI_HPP

#include <Eigen/Dense>
#include <functional>

#include "pmcmc/kernel.hpp"
#include "pmcmc/parallel.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc {

// Increment density r on R^N. The sampler draws eps ~ r; log_density is
// only needed by the naive independent-proposal weights and may be empty.
struct RwProposalDensity {
  int dim = 0;
  std::function<Vector(RngStream&)> sampler;
  std::function<double(const Vector&)> log_density;
};

RwProposalDensity rw_isotropic_gaussian(int dim, double sigma);
RwProposalDensity rw_diagonal_gaussian(Vector sigmas);
RwProposalDensity rw_uniform_box(int dim, double half_width);
// Product of exponentials with rate `rate` shifted left by `shift`;
// deliberately skewed to exercise the non-symmetric proposal path.
RwProposalDensity rw_shifted_exponential(int dim, double rate, double shift);

// Coordinate flip exchanging slot 0 and slot j of a (p+1)-tuple.
struct FlipInvolution {
  int j = 0;
  void apply(std::vector<Vector>& tuple) const;
};

// One conditionally independent random-walk cloud: intermediate point
// q_bar = q0 - eps_bar (so the reverse kernel density is r(q - q_tilde)),
// then p i.i.d. forward draws q_j = q_bar + eps_j. Masses are the target
// log-densities at each slot.
ProposalCloud propose_cloud_rw(const Vector& q0, int p,
                               const RwProposalDensity& r,
                               const std::function<double(const Vector&)>& log_target,
                               std::uint64_t iteration, std::uint64_t seed,
                               const WorkerPool* pool = nullptr);

// Acceptance vector for p independent proposals around the current state
// (no intermediate point): slot j gets mass pi(q_j) * prod_{i != j} r(q_i - q_j).
AcceptanceVector naive_independent_weights(const ProposalCloud& cloud,
                                           const RwProposalDensity& r);

// Brute-force oracle: exact transition matrix of the conditionally
// independent multiproposal walk on a finite state space, with the
// transpose-convention reverse kernel and Barker selection. The proposal
// matrix must be doubly stochastic for the detailed-balance guarantee.
Eigen::MatrixXd exact_transition_matrix_discrete(const Vector& target_masses,
                                                 const Eigen::MatrixXd& proposal,
                                                 int p);

class RwMultiSampler : public Sampler {
 public:
  RwMultiSampler(std::function<double(const Vector&)> log_target, int dim,
                 int p, RwProposalDensity r, const WorkerPool* pool = nullptr);

  int dim() const override { return dim_; }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override;

 private:
  std::function<double(const Vector&)> log_target_;
  int dim_;
  int p_;
  RwProposalDensity r_;
  const WorkerPool* pool_;
};

}  // namespace pmcmc

#endif
