#ifndef PMCMC_KERNEL_HPP
#define PMCMC_KERNEL_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "pmcmc/errors.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc {

using Vector = Eigen::VectorXd;

// log(sum(exp(v))) with max shift; -inf for an all-(-inf) input.
double log_sum_exp(const std::vector<double>& v);

// Current state plus p proposals plus the p+1 log selection masses.
// Slot 0 is the current state, slot j >= 1 is proposals[j-1].
struct ProposalCloud {
  Vector current;
  std::vector<Vector> proposals;
  std::vector<double> log_masses;

  int num_slots() const { return static_cast<int>(proposals.size()) + 1; }
  const Vector& slot(int j) const { return j == 0 ? current : proposals[j - 1]; }
};

// Selection probabilities over the p+1 slots; entries sum to one.
struct AcceptanceVector {
  std::vector<double> probs;
};

enum class WeightMode { kBarker, kMhWedge };

// Barker selection: probs[j] = exp(log_masses[j] - logsumexp(log_masses)).
// Throws AllMassesZero when every mass is zero.
AcceptanceVector barker_weights(const std::vector<double>& log_masses);

// Barker selection resolving an all-zero cloud to "stay at slot stay_slot".
AcceptanceVector barker_weights_or_stay(const std::vector<double>& log_masses,
                                        int stay_slot);

// Metropolis-Hastings wedge selection out of slot k_cur. bar_alpha holds the
// p weights for the slots j != k_cur in increasing slot order; the residual
// probability mass is assigned to k_cur itself.
AcceptanceVector mh_wedge_weights(const std::vector<double>& log_masses,
                                  int k_cur,
                                  const std::vector<double>& bar_alpha);

// Inverse-CDF draw: smallest j with cumulative probability > u.
int categorical_draw(const AcceptanceVector& probs, double u);

// Inverse-CDF jump draw enumerating the occupied slot first and the
// remaining slots in increasing order. Returns the canonical index
// (0 = stay at k_cur) and writes the chosen physical slot. Keeping this
// enumeration fixed is what makes a k-independent row with one jump
// reduce to the single-jump driver bit for bit.
int canonical_jump_draw(const AcceptanceVector& row, int k_cur, double u,
                        int& slot);

// One recorded step of a multiproposal chain. moved is true when the
// selected slot holds a state different from the current one, so a
// degenerate cloud never counts as a move regardless of the drawn index.
struct StepResult {
  Vector state;
  int selected = 0;
  bool moved = false;
  std::vector<double> log_masses;
};

// Single-jump sampler contract (one cloud, one selection per iteration).
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual int dim() const = 0;
  virtual StepResult step(const Vector& q, std::uint64_t iteration,
                          std::uint64_t seed) const = 0;
};

// Cloud-generating sampler contract for the multi-jump resampling driver.
// make_cloud builds a fresh cloud whose slot k_cur holds q; jump_row gives
// the transition probabilities out of occupied slot k.
class ResamplingSampler {
 public:
  virtual ~ResamplingSampler() = default;
  virtual int dim() const = 0;
  virtual int proposal_count() const = 0;
  virtual ProposalCloud make_cloud(const Vector& q, int k_cur,
                                   std::uint64_t iteration,
                                   std::uint64_t seed) const = 0;
  virtual AcceptanceVector jump_row(const ProposalCloud& cloud, int k) const = 0;
};

// Ordered chain output. samples holds the initial state plus one entry per
// recorded step; extras optionally snapshots the per-step log masses.
struct ChainRecord {
  std::vector<Vector> samples;
  std::vector<int> selected;
  std::vector<char> moved;
  std::vector<std::vector<double>> extras;

  std::size_t iterations() const { return selected.size(); }
};

bool operator==(const ChainRecord& a, const ChainRecord& b);

// Occupied-slot state of the resampling driver.
struct ResamplingState {
  ProposalCloud cloud;
  int k_cur = 0;
};

// Sequential chain driver; bit-reproducible for a fixed seed regardless of
// how many workers the sampler uses internally.
ChainRecord run_chain(const Sampler& sampler, const Vector& init,
                      std::uint64_t n_iters, std::uint64_t seed,
                      bool record_masses = false);

// Multi-jump driver: per outer iteration one cloud is generated around the
// occupied slot and n_jumps successive index jumps are recorded. Jump draws
// enumerate the occupied slot first and the remaining slots in increasing
// order, so a k-independent acceptance row with n_jumps = 1 reproduces
// run_chain bit for bit under the shared substream convention.
ChainRecord run_resampling_chain(const ResamplingSampler& sampler,
                                 const Vector& init, std::uint64_t n_outer,
                                 std::uint64_t n_jumps, std::uint64_t seed,
                                 bool record_masses = false);

}  // namespace pmcmc

#endif
