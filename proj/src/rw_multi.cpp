#include "pmcmc/rw_multi.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace pmcmc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

RwProposalDensity rw_isotropic_gaussian(int dim, double sigma) {
  if (dim < 1 || !(sigma > 0.0))
    throw ConfigError("rw_isotropic_gaussian: need dim >= 1 and sigma > 0");
  RwProposalDensity r;
  r.dim = dim;
  r.sampler = [dim, sigma](RngStream& rng) {
    Vector eps(dim);
    for (int k = 0; k < dim; ++k) eps[k] = sigma * rng.gaussian();
    return eps;
  };
  const double log_norm = -0.5 * dim * std::log(2.0 * M_PI * sigma * sigma);
  r.log_density = [sigma, log_norm](const Vector& eps) {
    return log_norm - 0.5 * eps.squaredNorm() / (sigma * sigma);
  };
  return r;
}

RwProposalDensity rw_diagonal_gaussian(Vector sigmas) {
  const int dim = static_cast<int>(sigmas.size());
  for (int k = 0; k < dim; ++k)
    if (!(sigmas[k] > 0.0))
      throw ConfigError("rw_diagonal_gaussian: sigmas must be positive");
  RwProposalDensity r;
  r.dim = dim;
  r.sampler = [sigmas](RngStream& rng) {
    Vector eps(sigmas.size());
    for (int k = 0; k < sigmas.size(); ++k) eps[k] = sigmas[k] * rng.gaussian();
    return eps;
  };
  double log_norm = 0.0;
  for (int k = 0; k < dim; ++k) log_norm -= 0.5 * std::log(2.0 * M_PI * sigmas[k] * sigmas[k]);
  r.log_density = [sigmas, log_norm](const Vector& eps) {
    double acc = 0.0;
    for (int k = 0; k < eps.size(); ++k) {
      const double z = eps[k] / sigmas[k];
      acc += z * z;
    }
    return log_norm - 0.5 * acc;
  };
  return r;
}

RwProposalDensity rw_uniform_box(int dim, double half_width) {
  if (dim < 1 || !(half_width > 0.0))
    throw ConfigError("rw_uniform_box: need dim >= 1 and half_width > 0");
  RwProposalDensity r;
  r.dim = dim;
  r.sampler = [dim, half_width](RngStream& rng) {
    Vector eps(dim);
    for (int k = 0; k < dim; ++k)
      eps[k] = half_width * (2.0 * rng.uniform() - 1.0);
    return eps;
  };
  const double log_inside = -dim * std::log(2.0 * half_width);
  r.log_density = [half_width, log_inside](const Vector& eps) {
    for (int k = 0; k < eps.size(); ++k)
      if (std::abs(eps[k]) > half_width) return kNegInf;
    return log_inside;
  };
  return r;
}

RwProposalDensity rw_shifted_exponential(int dim, double rate, double shift) {
  if (dim < 1 || !(rate > 0.0))
    throw ConfigError("rw_shifted_exponential: need dim >= 1 and rate > 0");
  RwProposalDensity r;
  r.dim = dim;
  r.sampler = [dim, rate, shift](RngStream& rng) {
    Vector eps(dim);
    for (int k = 0; k < dim; ++k) {
      const double u = 1.0 - rng.uniform();  // (0,1]
      eps[k] = -std::log(u) / rate - shift;
    }
    return eps;
  };
  const double log_rate = std::log(rate);
  r.log_density = [dim, rate, shift, log_rate](const Vector& eps) {
    double acc = 0.0;
    for (int k = 0; k < eps.size(); ++k) {
      const double x = eps[k] + shift;
      if (x < 0.0) return kNegInf;
      acc += log_rate - rate * x;
    }
    return acc;
  };
  return r;
}

void FlipInvolution::apply(std::vector<Vector>& tuple) const {
  if (j < 0 || static_cast<std::size_t>(j) >= tuple.size())
    throw DimensionError("FlipInvolution: slot out of range");
  if (j != 0) std::swap(tuple[0], tuple[static_cast<std::size_t>(j)]);
}

ProposalCloud propose_cloud_rw(const Vector& q0, int p,
                               const RwProposalDensity& r,
                               const std::function<double(const Vector&)>& log_target,
                               std::uint64_t iteration, std::uint64_t seed,
                               const WorkerPool* pool) {
  if (p < 1) throw ConfigError("propose_cloud_rw: p must be >= 1");
  RngStream aux(seed, iteration, RngStream::kAuxSlot);
  const Vector q_bar = q0 - r.sampler(aux);

  ProposalCloud cloud;
  cloud.current = q0;
  cloud.proposals.resize(p);
  cloud.log_masses.resize(p + 1);
  auto fill_slot = [&](std::size_t j) {
    if (j == 0) {
      cloud.log_masses[0] = log_target(cloud.current);
      return;
    }
    RngStream slot_rng(seed, iteration, static_cast<std::uint32_t>(j));
    cloud.proposals[j - 1] = q_bar + r.sampler(slot_rng);
    cloud.log_masses[j] = log_target(cloud.proposals[j - 1]);
  };
  if (pool != nullptr && pool->worker_count() > 1) {
    pool->run(static_cast<std::size_t>(p) + 1, fill_slot);
  } else {
    for (int j = 0; j <= p; ++j) fill_slot(j);
  }
  return cloud;
}

AcceptanceVector naive_independent_weights(const ProposalCloud& cloud,
                                           const RwProposalDensity& r) {
  if (!r.log_density)
    throw MissingDensity("naive_independent_weights: r has no log density");
  const int slots = cloud.num_slots();
  std::vector<double> masses(slots);
  for (int j = 0; j < slots; ++j) {
    double acc = cloud.log_masses[j];
    for (int i = 0; i < slots; ++i) {
      if (i == j) continue;
      acc += r.log_density(cloud.slot(i) - cloud.slot(j));
    }
    masses[j] = acc;
  }
  return barker_weights(masses);
}

Eigen::MatrixXd exact_transition_matrix_discrete(const Vector& target_masses,
                                                 const Eigen::MatrixXd& proposal,
                                                 int p) {
  const int m = static_cast<int>(target_masses.size());
  if (proposal.rows() != m || proposal.cols() != m)
    throw DimensionError("exact_transition_matrix_discrete: proposal shape");
  if (m > 8 || p > 3 || p < 1)
    throw TooLarge("exact_transition_matrix_discrete: enumeration guard m <= 8, p <= 3");

  Eigen::MatrixXd trans = Eigen::MatrixXd::Zero(m, m);
  std::vector<int> cloud(p);
  for (int x0 = 0; x0 < m; ++x0) {
    for (int xbar = 0; xbar < m; ++xbar) {
      const double w_bar = proposal(xbar, x0);  // transpose-convention kernel
      if (w_bar == 0.0) continue;
      // Enumerate all p-clouds drawn from row xbar.
      std::fill(cloud.begin(), cloud.end(), 0);
      for (;;) {
        double w_cloud = w_bar;
        for (int j = 0; j < p; ++j) w_cloud *= proposal(xbar, cloud[j]);
        if (w_cloud > 0.0) {
          double total = target_masses[x0];
          for (int j = 0; j < p; ++j) total += target_masses[cloud[j]];
          if (total > 0.0) {
            trans(x0, x0) += w_cloud * target_masses[x0] / total;
            for (int j = 0; j < p; ++j)
              trans(x0, cloud[j]) += w_cloud * target_masses[cloud[j]] / total;
          } else {
            trans(x0, x0) += w_cloud;  // unreachable cloud: stay
          }
        }
        int carry = p - 1;
        while (carry >= 0 && ++cloud[carry] == m) cloud[carry--] = 0;
        if (carry < 0) break;
      }
    }
  }
  return trans;
}

RwMultiSampler::RwMultiSampler(std::function<double(const Vector&)> log_target,
                               int dim, int p, RwProposalDensity r,
                               const WorkerPool* pool)
    : log_target_(std::move(log_target)),
      dim_(dim),
      p_(p),
      r_(std::move(r)),
      pool_(pool) {
  if (p_ < 1) throw ConfigError("rw-multi: p must be >= 1");
  if (r_.dim != dim_)
    throw DimensionError("rw-multi: proposal dimension mismatch");
}

StepResult RwMultiSampler::step(const Vector& q, std::uint64_t iteration,
                                std::uint64_t seed) const {
  ProposalCloud cloud =
      propose_cloud_rw(q, p_, r_, log_target_, iteration, seed, pool_);
  const AcceptanceVector weights = barker_weights_or_stay(cloud.log_masses, 0);
  RngStream selection(seed, iteration, RngStream::kSelectionSlot);
  const int j = categorical_draw(weights, selection.uniform());
  StepResult out;
  out.state = cloud.slot(j);
  out.selected = j;
  out.moved = (j != 0) && (out.state != q);
  out.log_masses = std::move(cloud.log_masses);
  return out;
}

}  // namespace pmcmc
