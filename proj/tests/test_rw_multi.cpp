#include <doctest.h>

#include <cmath>

#include "pmcmc/diagnostics.hpp"
#include "pmcmc/rw_multi.hpp"
#include "test_helpers.hpp"

using namespace pmcmc;

TEST_SUITE_BEGIN("rw-multi");

namespace {

RwProposalDensity point_mass(int dim) {
  RwProposalDensity r;
  r.dim = dim;
  r.sampler = [dim](RngStream&) { return Vector::Zero(dim); };
  return r;
}

double std_normal_log_density(const Vector& q) {
  return -0.5 * q.squaredNorm() - 0.5 * q.size() * std::log(2.0 * M_PI);
}

}  // namespace

TEST_CASE("flip involution applied twice is the identity") {
  RngStream rng(3, 0, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const int p = 1 + static_cast<int>(rng.uniform_below(6));
    std::vector<Vector> tuple(p + 1);
    for (auto& v : tuple) {
      v = Vector(3);
      for (int k = 0; k < 3; ++k) v[k] = rng.gaussian();
    }
    const std::vector<Vector> original = tuple;
    for (int j = 0; j <= p; ++j) {
      FlipInvolution flip{j};
      flip.apply(tuple);
      flip.apply(tuple);
      for (int s = 0; s <= p; ++s) CHECK(tuple[s] == original[s]);
    }
  }
}

TEST_CASE("point-mass increments give a coincident cloud with uniform weights") {
  const Vector q0 = Vector::Constant(2, 1.5);
  const auto cloud =
      propose_cloud_rw(q0, 3, point_mass(2), std_normal_log_density, 0, 42);
  for (const auto& q : cloud.proposals) CHECK((q - q0).norm() == 0.0);
  const auto w = barker_weights(cloud.log_masses);
  for (double x : w.probs) CHECK(x == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("cloud masses are the target values alone, for any r") {
  // The Barker weights never see the proposal density; changing r changes
  // only where the cloud sits.
  const Vector q0 = (Vector(2) << 0.3, -0.7).finished();
  for (const auto& r : {rw_isotropic_gaussian(2, 1.3),
                        rw_shifted_exponential(2, 2.0, 0.25)}) {
    const auto cloud =
        propose_cloud_rw(q0, 4, r, std_normal_log_density, 5, 11);
    for (int j = 0; j < cloud.num_slots(); ++j)
      CHECK(cloud.log_masses[j] ==
            doctest::Approx(std_normal_log_density(cloud.slot(j))).epsilon(1e-15));
  }
}

TEST_CASE("two-stage gaussian walk has the combined variance") {
  // Symmetric r: the intermediate-point construction is a sum of two
  // independent increments, so proposals have variance 2 sigma^2 around q0.
  const double sigma = 0.8;
  const auto r = rw_isotropic_gaussian(1, sigma);
  const Vector q0 = Vector::Zero(1);
  auto flat = [](const Vector&) { return 0.0; };
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto cloud = propose_cloud_rw(q0, 1, r, flat, i, 77);
    const double x = cloud.proposals[0][0];
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  const double true_var = 2.0 * sigma * sigma;
  CHECK(std::abs(mean) < 3.0 * std::sqrt(true_var / n));
  CHECK(std::abs(var - true_var) < 3.0 * true_var * std::sqrt(2.0 / n));
}

TEST_CASE("built-in increment families match their declared moments") {
  struct Family {
    RwProposalDensity r;
    double mean, var, kurtosis;
  };
  const std::vector<Family> families = {
      {rw_isotropic_gaussian(1, 1.7), 0.0, 1.7 * 1.7, 3.0},
      {rw_uniform_box(1, 2.0), 0.0, 4.0 / 3.0, 1.8},
      {rw_shifted_exponential(1, 2.0, 0.75), 0.5 - 0.75, 0.25, 9.0},
  };
  const int n = 1000000;
  int stream = 0;
  for (const auto& fam : families) {
    RngStream rng(2025, 0, static_cast<std::uint32_t>(stream++));
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = fam.r.sampler(rng)[0];
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double sd = std::sqrt(fam.var);
    CHECK(std::abs(mean - fam.mean) < 3.0 * sd / std::sqrt(n));
    CHECK(std::abs(var - fam.var) <
          3.0 * fam.var * std::sqrt((fam.kurtosis - 1.0) / n));
  }
}

TEST_CASE("naive independent weights: two-slot reduction") {
  const auto r = rw_isotropic_gaussian(1, 1.0);
  ProposalCloud cloud;
  cloud.current = Vector::Constant(1, 0.4);
  cloud.proposals = {Vector::Constant(1, -0.9)};
  cloud.log_masses = {std_normal_log_density(cloud.current),
                      std_normal_log_density(cloud.proposals[0])};
  const auto w = naive_independent_weights(cloud, r);

  const double pi0 = std::exp(cloud.log_masses[0]);
  const double pi1 = std::exp(cloud.log_masses[1]);
  const double r01 = std::exp(r.log_density(cloud.proposals[0] - cloud.current));
  const double r10 = std::exp(r.log_density(cloud.current - cloud.proposals[0]));
  const double expected = pi1 * r10 / (pi0 * r01 + pi1 * r10);
  CHECK(w.probs[1] == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("naive independent weights: flat target, symmetric r is uniform") {
  const auto r = rw_isotropic_gaussian(2, 0.9);
  ProposalCloud cloud;
  cloud.current = Vector::Zero(2);

  SUBCASE("single proposal") {
    cloud.proposals = {(Vector(2) << 0.3, 0.1).finished()};
    cloud.log_masses.assign(2, 0.0);
    const auto w = naive_independent_weights(cloud, r);
    CHECK(w.probs[0] == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(w.probs[1] == doctest::Approx(0.5).epsilon(1e-13));
  }

  SUBCASE("equidistant cloud") {
    // Radial r and equal pairwise distances make every slot product equal.
    const double s = 0.7;
    cloud.current = (Vector(2) << 0.0, 0.0).finished();
    cloud.proposals = {(Vector(2) << s, 0.0).finished(),
                       (Vector(2) << 0.5 * s, s * std::sqrt(3.0) / 2.0).finished()};
    cloud.log_masses.assign(3, 0.0);
    const auto w = naive_independent_weights(cloud, r);
    for (double x : w.probs) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("naive independent weights: fixed two-proposal cloud") {
  const auto r = rw_isotropic_gaussian(1, 1.25);
  ProposalCloud cloud;
  cloud.current = Vector::Constant(1, 0.2);
  cloud.proposals = {Vector::Constant(1, 1.1), Vector::Constant(1, -0.6)};
  cloud.log_masses = {std_normal_log_density(cloud.current),
                      std_normal_log_density(cloud.proposals[0]),
                      std_normal_log_density(cloud.proposals[1])};
  const auto w = naive_independent_weights(cloud, r);

  // Direct evaluation with scalar arithmetic.
  auto rho = [&](double x) {
    return std::exp(-0.5 * x * x / (1.25 * 1.25)) / (1.25 * std::sqrt(2.0 * M_PI));
  };
  auto pi = [](double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  };
  const double q0 = 0.2, q1 = 1.1, q2 = -0.6;
  const double m0 = pi(q0) * rho(q1 - q0) * rho(q2 - q0);
  const double m1 = pi(q1) * rho(q0 - q1) * rho(q2 - q1);
  const double m2 = pi(q2) * rho(q0 - q2) * rho(q1 - q2);
  const double total = m0 + m1 + m2;
  CHECK(w.probs[0] == doctest::Approx(m0 / total).epsilon(1e-12));
  CHECK(w.probs[1] == doctest::Approx(m1 / total).epsilon(1e-12));
  CHECK(w.probs[2] == doctest::Approx(m2 / total).epsilon(1e-12));
}

TEST_CASE("naive independent weights require an evaluable density") {
  ProposalCloud cloud;
  cloud.current = Vector::Zero(1);
  cloud.proposals = {Vector::Zero(1)};
  cloud.log_masses = {0.0, 0.0};
  CHECK_THROWS_AS(naive_independent_weights(cloud, point_mass(1)),
                  MissingDensity);
}

TEST_CASE("exact transition matrix: stochastic and symmetric base case") {
  const Eigen::MatrixXd f = pmcmc_test::ring_proposal(4);
  const Vector uniform = Vector::Ones(4);
  const Eigen::MatrixXd trans = exact_transition_matrix_discrete(uniform, f, 1);
  for (int i = 0; i < 4; ++i)
    CHECK(trans.row(i).sum() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK((trans - trans.transpose()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("exact transition matrix: detailed balance on the 5-ring") {
  const Vector masses = (Vector(5) << 1, 2, 3, 2, 1).finished();
  const Eigen::MatrixXd trans =
      exact_transition_matrix_discrete(masses, pmcmc_test::ring_proposal(5), 2);
  const Vector pi = masses / masses.sum();
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    CHECK(trans.row(i).sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (int j = 0; j < 5; ++j)
      worst = std::max(worst,
                       std::abs(pi[i] * trans(i, j) - pi[j] * trans(j, i)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("exact transition matrix enumeration guard") {
  const Vector big = Vector::Ones(9);
  CHECK_THROWS_AS(
      exact_transition_matrix_discrete(big, Eigen::MatrixXd::Identity(9, 9), 1),
      TooLarge);
  const Vector ok = Vector::Ones(3);
  CHECK_THROWS_AS(
      exact_transition_matrix_discrete(ok, Eigen::MatrixXd::Identity(3, 3), 4),
      TooLarge);
}

TEST_CASE("enumerated kernel matches simulated transition frequencies") {
  // Dual route: the brute-force transition matrix against long-run
  // empirical transition counts of the sampler realizing the same kernel.
  const Vector masses = (Vector(5) << 1, 2, 3, 2, 1).finished();
  const Eigen::MatrixXd proposal = pmcmc_test::ring_proposal(5);
  const Eigen::MatrixXd exact =
      exact_transition_matrix_discrete(masses, proposal, 2);

  pmcmc_test::DiscreteRingSampler sampler(masses, proposal, 2);
  const std::uint64_t n = 200000;
  const ChainRecord rec = run_chain(sampler, Vector::Zero(1), n, 31415);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(5, 5);
  for (std::size_t i = 0; i + 1 < rec.samples.size(); ++i)
    counts(static_cast<int>(rec.samples[i][0]),
           static_cast<int>(rec.samples[i + 1][0])) += 1.0;
  for (int i = 0; i < 5; ++i) {
    const double visits = counts.row(i).sum();
    REQUIRE(visits > 1000.0);
    for (int j = 0; j < 5; ++j) {
      const double phat = counts(i, j) / visits;
      const double sigma =
          std::sqrt(exact(i, j) * (1.0 - exact(i, j)) / visits);
      CHECK(std::abs(phat - exact(i, j)) < std::max(3.0 * sigma, 1e-9));
    }
  }
}

TEST_CASE("naive independent weights drive a correct chain") {
  // Proposals drawn directly around the current state (no intermediate
  // point); the kernel-product masses are what keep this unbiased.
  struct NaiveSampler : Sampler {
    RwProposalDensity r = rw_isotropic_gaussian(1, 1.5);
    int p = 3;
    int dim() const override { return 1; }
    StepResult step(const Vector& q, std::uint64_t iteration,
                    std::uint64_t seed) const override {
      ProposalCloud cloud;
      cloud.current = q;
      cloud.proposals.resize(p);
      cloud.log_masses.resize(p + 1);
      cloud.log_masses[0] = std_normal_log_density(q);
      for (int j = 1; j <= p; ++j) {
        RngStream slot(seed, iteration, static_cast<std::uint32_t>(j));
        cloud.proposals[j - 1] = q + r.sampler(slot);
        cloud.log_masses[j] = std_normal_log_density(cloud.proposals[j - 1]);
      }
      const AcceptanceVector w = naive_independent_weights(cloud, r);
      RngStream selection(seed, iteration, RngStream::kSelectionSlot);
      const int j = categorical_draw(w, selection.uniform());
      StepResult out;
      out.state = cloud.slot(j);
      out.selected = j;
      out.moved = (j != 0) && (out.state != q);
      return out;
    }
  };
  NaiveSampler sampler;
  const ChainRecord rec = run_chain(sampler, Vector::Zero(1), 100000, 2718);
  ScalarSeries thinned;
  for (std::size_t i = 0; i < rec.samples.size(); i += 10)
    thinned.values.push_back(rec.samples[i][0]);
  const double d = ks_distance(thinned, pmcmc_test::std_normal_cdf);
  CHECK(d < ks_critical_1pct(thinned.values.size()));
}

TEST_CASE("worker pool does not change the rw chain") {
  WorkerPool pool(4);
  RwMultiSampler serial(std_normal_log_density, 2, 6,
                        rw_isotropic_gaussian(2, 1.2));
  RwMultiSampler pooled(std_normal_log_density, 2, 6,
                        rw_isotropic_gaussian(2, 1.2), &pool);
  const ChainRecord a = run_chain(serial, Vector::Zero(2), 300, 99, true);
  const ChainRecord b = run_chain(pooled, Vector::Zero(2), 300, 99, true);
  CHECK(a == b);
}

TEST_CASE("1D standard normal sanity across proposal counts") {
  for (const int p : {1, 4, 16}) {
    RwMultiSampler sampler(std_normal_log_density, 1, p,
                           rw_isotropic_gaussian(1, 2.4));
    const ChainRecord rec =
        run_chain(sampler, Vector::Zero(1), 100000, 1000 + p);
    ScalarSeries thinned;
    for (std::size_t i = 0; i < rec.samples.size(); i += 10)
      thinned.values.push_back(rec.samples[i][0]);
    const double d = ks_distance(thinned, pmcmc_test::std_normal_cdf);
    CHECK(d < ks_critical_1pct(thinned.values.size()));
  }
}

TEST_SUITE_END();
