#include "pmcmc/targets.hpp"

#include <cmath>

namespace pmcmc {

double gaussian_log_density(const Vector& x, const GaussianTarget& t) {
  double acc = 0.0;
  for (int k = 0; k < x.size(); ++k) {
    const double z = x[k] - t.mean[k];
    acc += z * z / t.variances[k] + std::log(2.0 * M_PI * t.variances[k]);
  }
  return -0.5 * acc;
}

Vector gaussian_grad_neg_log_density(const Vector& x, const GaussianTarget& t) {
  return (x - t.mean).cwiseQuotient(t.variances);
}

MixtureTarget MixtureTarget::grid(int K) {
  if (K < 1) throw ConfigError("MixtureTarget: K must be >= 1");
  MixtureTarget t;
  t.centers.reserve(K);
  for (int i = 0; i < K; ++i) {
    Vector c(2);
    c << 10.0 * i, 10.0 * i;
    t.centers.push_back(c);
  }
  return t;
}

double mixture_log_density(const Vector& x, const MixtureTarget& t) {
  const double d = static_cast<double>(x.size());
  const double log_norm =
      -std::log(static_cast<double>(t.components())) - 0.5 * d * std::log(2.0 * M_PI);
  std::vector<double> terms(t.centers.size());
  for (std::size_t i = 0; i < t.centers.size(); ++i)
    terms[i] = log_norm - 0.5 * (x - t.centers[i]).squaredNorm();
  return log_sum_exp(terms);
}

Vector mixture_grad_neg_log_density(const Vector& x, const MixtureTarget& t) {
  // Softmax-weighted component responsibilities.
  std::vector<double> terms(t.centers.size());
  for (std::size_t i = 0; i < t.centers.size(); ++i)
    terms[i] = -0.5 * (x - t.centers[i]).squaredNorm();
  const double lse = log_sum_exp(terms);
  Vector mean_center = Vector::Zero(x.size());
  for (std::size_t i = 0; i < t.centers.size(); ++i)
    mean_center += std::exp(terms[i] - lse) * t.centers[i];
  return x - mean_center;
}

Eigen::MatrixXd build_antisymmetric(const Vector& q) {
  const std::size_t m = static_cast<std::size_t>(q.size());
  // Invert m = d(d-1)/2.
  const int d = static_cast<int>(std::lround((1.0 + std::sqrt(1.0 + 8.0 * m)) / 2.0));
  if (d < 2 || static_cast<std::size_t>(d) * (d - 1) / 2 != m)
    throw DimensionError("build_antisymmetric: length is not d(d-1)/2");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
  int idx = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      a(i, j) = q[idx];
      a(j, i) = -q[idx];
      ++idx;
    }
  return a;
}

double toy_potential(const Vector& q, const ToyInverseProblem& prob) {
  if (!q.allFinite()) throw SolveFailure("toy_potential: non-finite parameter");
  const Eigen::MatrixXd a = build_antisymmetric(q);
  Eigen::MatrixXd shifted = a;
  shifted.diagonal().array() += prob.kappa;
  const Vector x = shifted.partialPivLu().solve(prob.g);
  const double r1 = prob.y1 - x[0];
  const double r2 = prob.y2 - x[1];
  return (r1 * r1 + r2 * r2) / (2.0 * prob.sigma_eta_sq);
}

GaussianBasis toy_prior_basis(const ToyInverseProblem& prob) {
  const int m = prob.d * (prob.d - 1) / 2;
  Vector eigs(m);
  for (int k = 0; k < m; ++k)
    eigs[k] = prob.prior_sigma_sq * std::pow(static_cast<double>(k + 1), -prob.prior_gamma);
  return GaussianBasis(eigs);
}

}  // namespace pmcmc
