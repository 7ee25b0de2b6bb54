#ifndef PMCMC_TEST_HELPERS_HPP
#define PMCMC_TEST_HELPERS_HPP

#include <Eigen/Dense>
#include <cmath>

#include "pmcmc/kernel.hpp"
#include "pmcmc/rng.hpp"

namespace pmcmc_test {

inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// Conditionally independent multiproposal walk on a finite state space,
// with the transpose-convention reverse kernel and Barker selection. The
// state is a one-dimensional vector holding the state index.
class DiscreteRingSampler : public pmcmc::Sampler {
 public:
  DiscreteRingSampler(Eigen::VectorXd target_masses, Eigen::MatrixXd proposal,
                      int p)
      : masses_(std::move(target_masses)),
        proposal_(std::move(proposal)),
        p_(p) {}

  int dim() const override { return 1; }

  pmcmc::StepResult step(const pmcmc::Vector& q, std::uint64_t iteration,
                         std::uint64_t seed) const override {
    const int m = static_cast<int>(masses_.size());
    const int x0 = static_cast<int>(q[0]);

    pmcmc::RngStream aux(seed, iteration, pmcmc::RngStream::kAuxSlot);
    const int xbar = draw_from_column(x0, aux.uniform());

    std::vector<int> cloud(p_ + 1);
    cloud[0] = x0;
    std::vector<double> log_masses(p_ + 1);
    log_masses[0] = std::log(masses_[x0]);
    for (int j = 1; j <= p_; ++j) {
      pmcmc::RngStream slot(seed, iteration, static_cast<std::uint32_t>(j));
      cloud[j] = draw_from_row(xbar, slot.uniform());
      log_masses[j] = std::log(masses_[cloud[j]]);
    }

    const pmcmc::AcceptanceVector w =
        pmcmc::barker_weights_or_stay(log_masses, 0);
    pmcmc::RngStream selection(seed, iteration,
                               pmcmc::RngStream::kSelectionSlot);
    const int j = pmcmc::categorical_draw(w, selection.uniform());

    pmcmc::StepResult out;
    out.state = pmcmc::Vector::Constant(1, static_cast<double>(cloud[j]));
    out.selected = j;
    out.moved = (j != 0) && cloud[j] != x0;
    out.log_masses = std::move(log_masses);
    (void)m;
    return out;
  }

 private:
  int draw_from_row(int row, double u) const {
    double cum = 0.0;
    const int m = static_cast<int>(masses_.size());
    for (int j = 0; j < m; ++j) {
      cum += proposal_(row, j);
      if (cum > u) return j;
    }
    return m - 1;
  }
  int draw_from_column(int col, double u) const {
    double cum = 0.0;
    const int m = static_cast<int>(masses_.size());
    for (int j = 0; j < m; ++j) {
      cum += proposal_(j, col);
      if (cum > u) return j;
    }
    return m - 1;
  }

  Eigen::VectorXd masses_;
  Eigen::MatrixXd proposal_;
  int p_;
};

inline Eigen::MatrixXd ring_proposal(int m) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    f(i, (i + 1) % m) += 0.5;
    f(i, (i + m - 1) % m) += 0.5;
  }
  return f;
}

}  // namespace pmcmc_test

#endif
