#ifndef PMCMC_MHMC_HPP
#define PMCMC_MHMC_HPP

#include <functional>
#include <vector>

#include "pmcmc/kernel.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc {

struct PhasePoint {
  Vector q;
  Vector v;
};

// Separable Hamiltonian H(q,v) = phi(q) + v' M^{-1} v / 2 with diagonal
// mass matrix M and step size delta. phi and its gradient must be safe to
// evaluate concurrently.
class HamiltonianSystem {
 public:
  HamiltonianSystem(std::function<double(const Vector&)> phi,
                    std::function<Vector(const Vector&)> grad_phi,
                    Vector mass_diag, double delta);

  double potential(const Vector& q) const { return phi_(q); }
  Vector grad_potential(const Vector& q) const { return grad_phi_(q); }
  double kinetic(const Vector& v) const;
  double energy(const PhasePoint& z) const { return phi_(z.q) + kinetic(z.v); }
  double delta() const { return delta_; }
  const Vector& mass_diag() const { return mass_diag_; }
  int dim() const { return static_cast<int>(mass_diag_.size()); }

  // Momentum refresh v ~ N(0, M).
  Vector sample_momentum(RngStream& rng) const;

 private:
  std::function<double(const Vector&)> phi_;
  std::function<Vector(const Vector&)> grad_phi_;
  Vector mass_diag_;
  double delta_;
};

// One kick-drift-kick step and its exact inverse.
PhasePoint leapfrog_step(const PhasePoint& z, const HamiltonianSystem& sys);
PhasePoint leapfrog_inverse(const PhasePoint& z, const HamiltonianSystem& sys);

// Pluggable one-step integrator; the default is the leapfrog pair above.
struct Integrator {
  std::function<PhasePoint(const PhasePoint&)> forward;
  std::function<PhasePoint(const PhasePoint&)> inverse;
};
Integrator leapfrog_integrator(const HamiltonianSystem& sys);

// Successive integrator states at times 0, delta, ..., p*delta plus their
// energies. Throws NonFiniteState if the integration overflows.
struct Trajectory {
  std::vector<PhasePoint> states;
  std::vector<double> energies;
};
Trajectory trajectory(const Vector& q, const Vector& v,
                      const HamiltonianSystem& sys, int p);
Trajectory trajectory(const Vector& q, const Vector& v,
                      const HamiltonianSystem& sys, int p,
                      const Integrator& integrator);

// Componentwise check of grad against central finite differences with
// tolerance max(abs_tol, abs_tol * |grad_i|). Returns true when consistent.
bool gradient_check(const std::function<double(const Vector&)>& phi,
                    const std::function<Vector(const Vector&)>& grad,
                    const Vector& q, double h = 1e-5, double abs_tol = 1e-5);

// Finite-difference Jacobian determinant of the one-step integrator map.
double integrator_jacobian_det(const HamiltonianSystem& sys,
                               const PhasePoint& z, double h = 1e-5);

// Multiproposal HMC: the proposal cloud is the leapfrog trajectory and
// slot j is accepted with bar_alpha_j * min(1, exp(H_0 - H_j)).
class MhmcSampler : public Sampler {
 public:
  MhmcSampler(HamiltonianSystem sys, int p, std::vector<double> bar_alpha = {});
  MhmcSampler(HamiltonianSystem sys, int p, std::vector<double> bar_alpha,
              Integrator integrator);

  int dim() const override { return sys_.dim(); }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override;

 private:
  HamiltonianSystem sys_;
  int p_;
  std::vector<double> bar_alpha_;
  Integrator integrator_;
};

// Resampling variant: fresh momentum at the occupied slot, trajectory
// rebuilt so slot m holds the (m - k_cur)-fold integrator image of the
// occupied point (negative powers via the inverse step), then n index
// jumps with Barker or MH rows on the slot energies.
class MhmcResamplingSampler : public ResamplingSampler {
 public:
  MhmcResamplingSampler(HamiltonianSystem sys, int p,
                        WeightMode mode = WeightMode::kBarker,
                        std::vector<double> bar_alpha = {});
  MhmcResamplingSampler(HamiltonianSystem sys, int p, WeightMode mode,
                        std::vector<double> bar_alpha, Integrator integrator);

  int dim() const override { return sys_.dim(); }
  int proposal_count() const override { return p_; }
  ProposalCloud make_cloud(const Vector& q, int k_cur, std::uint64_t iteration,
                           std::uint64_t seed) const override;
  AcceptanceVector jump_row(const ProposalCloud& cloud, int k) const override;

 private:
  HamiltonianSystem sys_;
  int p_;
  WeightMode mode_;
  std::vector<double> bar_alpha_;
  Integrator integrator_;
};

StepResult mhmc_step(const Vector& q, const HamiltonianSystem& sys, int p,
                     const std::vector<double>& bar_alpha,
                     std::uint64_t iteration, std::uint64_t seed);

// One resampling iteration from occupied slot k_cur: one rebuilt cloud and
// n recorded jump states; the final entry is the next chain state and the
// updated occupied slot is returned through k_cur.
std::vector<Vector> mhmc_resample_step(const Vector& q, int& k_cur,
                                       const HamiltonianSystem& sys, int p,
                                       std::uint64_t n, WeightMode mode,
                                       std::uint64_t iteration,
                                       std::uint64_t seed);

}  // namespace pmcmc

#endif
