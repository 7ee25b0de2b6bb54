#ifndef PMCMC_SIMPLICIAL_HPP
#define PMCMC_SIMPLICIAL_HPP

#include <Eigen/Dense>
#include <functional>

#include "pmcmc/kernel.hpp"
#include "pmcmc/parallel.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc {

// p unit vectors in R^N with pairwise unit distances; together with the
// origin they span a regular p-simplex.
struct SimplexBasis {
  Eigen::MatrixXd vertices;  // N x p, column j-1 holds w_j

  int p() const { return static_cast<int>(vertices.cols()); }
  int ambient_dim() const { return static_cast<int>(vertices.rows()); }
};

// Gram-Cholesky construction: rows of the lower-triangular factor of the
// Gram matrix (G_ii = 1, G_ij = 1/2), zero-padded to R^N.
SimplexBasis regular_simplex(int p, int N);

// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix
// with the sign of each diagonal entry of R folded into the matching
// column of Q. The sign correction is what makes the law exactly Haar.
Eigen::MatrixXd haar_orthogonal(int N, RngStream& rng);

// Distribution of the simplex edge length lambda > 0.
struct EdgeLengthLaw {
  enum class Kind { kConstant, kLogNormal, kGamma };

  Kind kind = Kind::kConstant;
  double a = 1.0;  // constant value, log-mean, or shape
  double b = 0.0;  // unused, log-sigma, or scale

  double sample(RngStream& rng) const;

  static EdgeLengthLaw constant(double lambda);
  static EdgeLengthLaw log_normal(double mu, double sigma);
  static EdgeLengthLaw gamma(double shape, double scale);
};

// One simplicial iteration: lambda ~ nu, Q ~ Haar, proposals
// q_j = q0 + lambda * Q * w_j, categorical selection on the target values.
StepResult simplicial_step(const Vector& q0, const SimplexBasis& basis,
                           const EdgeLengthLaw& law,
                           const std::function<double(const Vector&)>& log_target,
                           WeightMode mode, const std::vector<double>& bar_alpha,
                           std::uint64_t iteration, std::uint64_t seed,
                           const WorkerPool* pool = nullptr);

class SimplicialSampler : public Sampler {
 public:
  SimplicialSampler(std::function<double(const Vector&)> log_target, int dim,
                    int p, EdgeLengthLaw law,
                    WeightMode mode = WeightMode::kBarker,
                    std::vector<double> bar_alpha = {},
                    const WorkerPool* pool = nullptr);

  int dim() const override { return basis_.ambient_dim(); }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override;

  const SimplexBasis& basis() const { return basis_; }

 private:
  std::function<double(const Vector&)> log_target_;
  SimplexBasis basis_;
  EdgeLengthLaw law_;
  WeightMode mode_;
  std::vector<double> bar_alpha_;
  const WorkerPool* pool_;
};

}  // namespace pmcmc

#endif
