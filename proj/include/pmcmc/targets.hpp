#ifndef PMCMC_TARGETS_HPP
#define PMCMC_TARGETS_HPP

#include <Eigen/Dense>
#include <vector>

#include "pmcmc/kernel.hpp"
#include "pmcmc/mpcn.hpp"

namespace pmcmc {

// Diagonal Gaussian target.
struct GaussianTarget {
  Vector mean;
  Vector variances;
};

double gaussian_log_density(const Vector& x, const GaussianTarget& t);
Vector gaussian_grad_neg_log_density(const Vector& x, const GaussianTarget& t);

// Equal-weight mixture of unit isotropic Gaussians.
struct MixtureTarget {
  std::vector<Vector> centers;

  int dim() const { return centers.empty() ? 0 : static_cast<int>(centers.front().size()); }
  int components() const { return static_cast<int>(centers.size()); }

  // Centers (10i, 10i) for i = 0..K-1 in two dimensions.
  static MixtureTarget grid(int K);
};

double mixture_log_density(const Vector& x, const MixtureTarget& t);
Vector mixture_grad_neg_log_density(const Vector& x, const MixtureTarget& t);

// Nonlinear inverse problem for the entries of a d x d antisymmetric matrix
// observed through the first two components of (A_q + kappa*I)^{-1} g.
struct ToyInverseProblem {
  int d = 4;
  double kappa = 0.1;
  Vector g = (Vector(4) << 0.0, 0.0, 5.0, 2.0).finished();
  double y1 = 4.601;
  double y2 = 18.021;
  double sigma_eta_sq = 2.0;
  double prior_sigma_sq = 5.0;
  double prior_gamma = 1.5;
};

// Upper-triangle row-major fill: A(1,2)=q1, A(1,3)=q2, ..., A(d-1,d)=q_m.
Eigen::MatrixXd build_antisymmetric(const Vector& q);

// Misfit potential: solve (A_q + kappa*I) x = g, quadratic penalty on the
// first two observed components.
double toy_potential(const Vector& q, const ToyInverseProblem& prob);

// Prior spectrum sigma^2 * k^{-gamma}, k = 1..d(d-1)/2.
GaussianBasis toy_prior_basis(const ToyInverseProblem& prob);

}  // namespace pmcmc

#endif
