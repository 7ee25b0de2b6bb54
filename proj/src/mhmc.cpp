#include "pmcmc/mhmc.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <utility>

namespace pmcmc {

HamiltonianSystem::HamiltonianSystem(std::function<double(const Vector&)> phi,
                                     std::function<Vector(const Vector&)> grad_phi,
                                     Vector mass_diag, double delta)
    : phi_(std::move(phi)),
      grad_phi_(std::move(grad_phi)),
      mass_diag_(std::move(mass_diag)),
      delta_(delta) {
  if (!(delta_ >= 0.0)) throw ConfigError("HamiltonianSystem: delta must be >= 0");
  for (int k = 0; k < mass_diag_.size(); ++k)
    if (!(mass_diag_[k] > 0.0))
      throw ConfigError("HamiltonianSystem: mass diagonal must be positive");
}

double HamiltonianSystem::kinetic(const Vector& v) const {
  double acc = 0.0;
  for (int k = 0; k < v.size(); ++k) acc += v[k] * v[k] / mass_diag_[k];
  return 0.5 * acc;
}

Vector HamiltonianSystem::sample_momentum(RngStream& rng) const {
  Vector v(mass_diag_.size());
  for (int k = 0; k < v.size(); ++k)
    v[k] = std::sqrt(mass_diag_[k]) * rng.gaussian();
  return v;
}

PhasePoint leapfrog_step(const PhasePoint& z, const HamiltonianSystem& sys) {
  const double half = 0.5 * sys.delta();
  PhasePoint out = z;
  out.v -= half * sys.grad_potential(out.q);
  out.q += sys.delta() * out.v.cwiseQuotient(sys.mass_diag());
  out.v -= half * sys.grad_potential(out.q);
  return out;
}

PhasePoint leapfrog_inverse(const PhasePoint& z, const HamiltonianSystem& sys) {
  const double half = 0.5 * sys.delta();
  PhasePoint out = z;
  out.v += half * sys.grad_potential(out.q);
  out.q -= sys.delta() * out.v.cwiseQuotient(sys.mass_diag());
  out.v += half * sys.grad_potential(out.q);
  return out;
}

Integrator leapfrog_integrator(const HamiltonianSystem& sys) {
  // Captured by value so the integrator stays valid on its own.
  Integrator integ;
  integ.forward = [sys](const PhasePoint& z) { return leapfrog_step(z, sys); };
  integ.inverse = [sys](const PhasePoint& z) { return leapfrog_inverse(z, sys); };
  return integ;
}

Trajectory trajectory(const Vector& q, const Vector& v,
                      const HamiltonianSystem& sys, int p) {
  return trajectory(q, v, sys, p, leapfrog_integrator(sys));
}

Trajectory trajectory(const Vector& q, const Vector& v,
                      const HamiltonianSystem& sys, int p,
                      const Integrator& integrator) {
  if (p < 1) throw ConfigError("trajectory: p must be >= 1");
  Trajectory traj;
  traj.states.reserve(p + 1);
  traj.energies.reserve(p + 1);
  traj.states.push_back({q, v});
  traj.energies.push_back(sys.energy(traj.states.back()));
  for (int j = 0; j < p; ++j) {
    PhasePoint next = integrator.forward(traj.states.back());
    if (!next.q.allFinite() || !next.v.allFinite())
      throw NonFiniteState(static_cast<std::uint64_t>(j));
    traj.energies.push_back(sys.energy(next));
    traj.states.push_back(std::move(next));
  }
  return traj;
}

bool gradient_check(const std::function<double(const Vector&)>& phi,
                    const std::function<Vector(const Vector&)>& grad,
                    const Vector& q, double h, double abs_tol) {
  const Vector g = grad(q);
  Vector probe = q;
  for (int k = 0; k < q.size(); ++k) {
    probe[k] = q[k] + h;
    const double up = phi(probe);
    probe[k] = q[k] - h;
    const double down = phi(probe);
    probe[k] = q[k];
    const double fd = (up - down) / (2.0 * h);
    const double tol = std::max(abs_tol, abs_tol * std::abs(g[k]));
    if (std::abs(fd - g[k]) > tol) return false;
  }
  return true;
}

double integrator_jacobian_det(const HamiltonianSystem& sys,
                               const PhasePoint& z, double h) {
  const int n = static_cast<int>(z.q.size());
  Eigen::MatrixXd jac(2 * n, 2 * n);
  auto flat_step = [&](const Eigen::VectorXd& w) {
    PhasePoint in{w.head(n), w.tail(n)};
    const PhasePoint out = leapfrog_step(in, sys);
    Eigen::VectorXd flat(2 * n);
    flat << out.q, out.v;
    return flat;
  };
  Eigen::VectorXd base(2 * n);
  base << z.q, z.v;
  for (int k = 0; k < 2 * n; ++k) {
    Eigen::VectorXd up = base, down = base;
    up[k] += h;
    down[k] -= h;
    jac.col(k) = (flat_step(up) - flat_step(down)) / (2.0 * h);
  }
  return jac.determinant();
}

namespace {

std::vector<double> wedge_or_uniform(int p, std::vector<double> bar_alpha) {
  if (bar_alpha.empty()) bar_alpha.assign(p, 1.0 / p);
  if (static_cast<int>(bar_alpha.size()) != p)
    throw DimensionError("mhmc: bar_alpha must have p entries");
  double total = 0.0;
  for (double a : bar_alpha) total += a;
  if (total > 1.0 + 1e-12)
    throw WeightBudgetExceeded("mhmc: sum of bar_alpha exceeds 1");
  return bar_alpha;
}

}  // namespace

MhmcSampler::MhmcSampler(HamiltonianSystem sys, int p,
                         std::vector<double> bar_alpha)
    : MhmcSampler(std::move(sys), p, std::move(bar_alpha), Integrator{}) {
}

MhmcSampler::MhmcSampler(HamiltonianSystem sys, int p,
                         std::vector<double> bar_alpha, Integrator integrator)
    : sys_(std::move(sys)),
      p_(p),
      bar_alpha_(wedge_or_uniform(p, std::move(bar_alpha))),
      integrator_(std::move(integrator)) {
  if (p_ < 1) throw ConfigError("mhmc: p must be >= 1");
  if (!integrator_.forward) integrator_ = leapfrog_integrator(sys_);
}

StepResult MhmcSampler::step(const Vector& q, std::uint64_t iteration,
                             std::uint64_t seed) const {
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  const Vector v = sys_.sample_momentum(aux);
  const Trajectory traj = trajectory(q, v, sys_, p_, integrator_);

  // For even kinetic energy H(q_j, -v_j) = H(q_j, v_j), so the trajectory
  // energies are exactly the involution energies.
  std::vector<double> log_masses(p_ + 1);
  for (int j = 0; j <= p_; ++j) log_masses[j] = -traj.energies[j];
  const AcceptanceVector weights = mh_wedge_weights(log_masses, 0, bar_alpha_);

  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  const int j = categorical_draw(weights, selection.uniform());
  StepResult out;
  out.state = traj.states[j].q;
  out.selected = j;
  out.moved = (j != 0) && (out.state != q);
  out.log_masses = std::move(log_masses);
  return out;
}

MhmcResamplingSampler::MhmcResamplingSampler(HamiltonianSystem sys, int p,
                                             WeightMode mode,
                                             std::vector<double> bar_alpha)
    : MhmcResamplingSampler(std::move(sys), p, mode, std::move(bar_alpha),
                            Integrator{}) {
}

MhmcResamplingSampler::MhmcResamplingSampler(HamiltonianSystem sys, int p,
                                             WeightMode mode,
                                             std::vector<double> bar_alpha,
                                             Integrator integrator)
    : sys_(std::move(sys)),
      p_(p),
      mode_(mode),
      bar_alpha_(mode == WeightMode::kMhWedge
                     ? wedge_or_uniform(p, std::move(bar_alpha))
                     : std::move(bar_alpha)),
      integrator_(std::move(integrator)) {
  if (p_ < 1) throw ConfigError("mhmc-resample: p must be >= 1");
  if (!integrator_.forward) integrator_ = leapfrog_integrator(sys_);
}

ProposalCloud MhmcResamplingSampler::make_cloud(const Vector& q, int k_cur,
                                                std::uint64_t iteration,
                                                std::uint64_t seed) const {
  if (k_cur < 0 || k_cur > p_)
    throw DimensionError("mhmc-resample: occupied slot out of range");
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  const Vector v = sys_.sample_momentum(aux);

  std::vector<PhasePoint> slots(p_ + 1);
  slots[k_cur] = {q, v};
  for (int m = k_cur + 1; m <= p_; ++m) {
    slots[m] = integrator_.forward(slots[m - 1]);
    if (!slots[m].q.allFinite() || !slots[m].v.allFinite())
      throw NonFiniteState(iteration);
  }
  for (int m = k_cur - 1; m >= 0; --m) {
    slots[m] = integrator_.inverse(slots[m + 1]);
    if (!slots[m].q.allFinite() || !slots[m].v.allFinite())
      throw NonFiniteState(iteration);
  }

  ProposalCloud cloud;
  cloud.log_masses.resize(p_ + 1);
  for (int m = 0; m <= p_; ++m) cloud.log_masses[m] = -sys_.energy(slots[m]);
  cloud.current = std::move(slots[0].q);
  cloud.proposals.resize(p_);
  for (int m = 1; m <= p_; ++m) cloud.proposals[m - 1] = std::move(slots[m].q);
  return cloud;
}

AcceptanceVector MhmcResamplingSampler::jump_row(const ProposalCloud& cloud,
                                                 int k) const {
  if (mode_ == WeightMode::kBarker)
    return barker_weights_or_stay(cloud.log_masses, k);
  return mh_wedge_weights(cloud.log_masses, k, bar_alpha_);
}

StepResult mhmc_step(const Vector& q, const HamiltonianSystem& sys, int p,
                     const std::vector<double>& bar_alpha,
                     std::uint64_t iteration, std::uint64_t seed) {
  return MhmcSampler(sys, p, bar_alpha).step(q, iteration, seed);
}

std::vector<Vector> mhmc_resample_step(const Vector& q, int& k_cur,
                                       const HamiltonianSystem& sys, int p,
                                       std::uint64_t n, WeightMode mode,
                                       std::uint64_t iteration,
                                       std::uint64_t seed) {
  if (n < 1) throw ConfigError("mhmc_resample_step: n must be >= 1");
  MhmcResamplingSampler sampler(sys, p, mode);
  const ProposalCloud cloud = sampler.make_cloud(q, k_cur, iteration, seed);
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  std::vector<Vector> recorded;
  recorded.reserve(n);
  for (std::uint64_t l = 0; l < n; ++l) {
    const AcceptanceVector row = sampler.jump_row(cloud, k_cur);
    canonical_jump_draw(row, k_cur, selection.uniform(), k_cur);
    recorded.push_back(cloud.slot(k_cur));
  }
  return recorded;
}

}  // namespace pmcmc
