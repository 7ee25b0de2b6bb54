#include <doctest.h>

#include <cmath>

#include "pmcmc/diagnostics.hpp"
#include "pmcmc/rng.hpp"
#include "test_helpers.hpp"

using namespace pmcmc;

TEST_SUITE_BEGIN("diagnostics");

namespace {

ScalarSeries white_noise(std::size_t n, std::uint64_t seed) {
  RngStream rng(seed, 0, 0);
  ScalarSeries s;
  s.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.values.push_back(rng.gaussian());
  return s;
}

ScalarSeries ar1(std::size_t n, double coeff, std::uint64_t seed) {
  RngStream rng(seed, 0, 0);
  ScalarSeries s;
  s.values.reserve(n);
  double x = 0.0;
  for (std::size_t i = 0; i < n + 1000; ++i) {
    x = coeff * x + rng.gaussian();
    if (i >= 1000) s.values.push_back(x);
  }
  return s;
}

ChainRecord synthetic_record(const std::vector<int>& moved) {
  ChainRecord rec;
  rec.samples.assign(moved.size() + 1, Vector::Zero(1));
  for (int m : moved) {
    rec.selected.push_back(m);
    rec.moved.push_back(static_cast<char>(m != 0));
  }
  return rec;
}

}  // namespace

TEST_CASE("move rate counts moved iterations") {
  CHECK(move_rate(synthetic_record({1, 1, 1, 1})) == 1.0);
  CHECK(move_rate(synthetic_record({0, 1, 0, 1})) == 0.5);
  ChainRecord empty;
  empty.samples.push_back(Vector::Zero(1));
  CHECK_THROWS_AS(move_rate(empty), EmptyChain);
}

TEST_CASE("autocorrelation of white noise is near zero at lag one") {
  const ScalarSeries s = white_noise(100000, 7);
  const auto acf = autocorrelation(s, 5);
  CHECK(acf[0] == 1.0);
  CHECK(std::abs(acf[1]) <= 0.02);
}

TEST_CASE("autocorrelation of an alternating series is exactly minus one") {
  ScalarSeries s;
  for (int i = 0; i < 1000; ++i) s.values.push_back(i % 2 == 0 ? 1.0 : -1.0);
  const auto acf = autocorrelation(s, 2);
  CHECK(std::abs(acf[1] + 1.0) <= 1e-12);
  CHECK(acf[0] == 1.0);
  for (double a : acf) {
    CHECK(a <= 1.0);
    CHECK(a >= -1.0);
  }
}

TEST_CASE("autocorrelation of an AR(1) series matches its coefficient") {
  const ScalarSeries s = ar1(100000, 0.9, 11);
  const auto acf = autocorrelation(s, 3);
  CHECK(acf[1] >= 0.88);
  CHECK(acf[1] <= 0.92);
}

TEST_CASE("autocorrelation input validation") {
  ScalarSeries tiny;
  tiny.values = {1.0};
  CHECK_THROWS_AS(autocorrelation(tiny, 0), EmptyChain);
  ScalarSeries two;
  two.values = {1.0, 2.0};
  CHECK_THROWS_AS(autocorrelation(two, 2), DimensionError);
}

TEST_CASE("ess of an i.i.d. series is near the length") {
  const ScalarSeries s = white_noise(10000, 21);
  const double e = ess(s);
  CHECK(e >= 8000.0);
  CHECK(e <= 12000.0);
}

TEST_CASE("ess of an AR(1) series matches the analytic ratio") {
  // (1 - rho) / (1 + rho) with rho = 0.9 gives 0.0526.
  const ScalarSeries s = ar1(100000, 0.9, 31);
  const double ratio = ess(s) / static_cast<double>(s.values.size());
  CHECK(ratio >= 0.04);
  CHECK(ratio <= 0.07);
}

TEST_CASE("ess rejects a constant series") {
  ScalarSeries s;
  s.values.assign(100, 3.5);
  CHECK_THROWS_AS(ess(s), ZeroVariance);
}

TEST_CASE("ks distance of reference samples is below the critical value") {
  ScalarSeries s = white_noise(100000, 41);
  CHECK(ks_distance(s, pmcmc_test::std_normal_cdf) <
        ks_critical_1pct(s.values.size()));
}

TEST_CASE("ks distance of a point mass at the median is one half") {
  ScalarSeries s;
  s.values.assign(500, 0.0);
  CHECK(ks_distance(s, pmcmc_test::std_normal_cdf) == 0.5);
}

TEST_CASE("ks distance against the sample's own empirical cdf vanishes") {
  ScalarSeries s = white_noise(1000, 51);
  std::vector<double> sorted = s.values;
  std::sort(sorted.begin(), sorted.end());
  auto empirical = [&sorted](double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / sorted.size();
  };
  CHECK(ks_distance(s, empirical) <= 1.0 / sorted.size() + 1e-15);
}

TEST_CASE("ks distance needs at least 100 points") {
  ScalarSeries s = white_noise(99, 61);
  CHECK_THROWS_AS(ks_distance(s, pmcmc_test::std_normal_cdf), EmptyChain);
}

TEST_CASE("rhat near one for identical stationary chains") {
  std::vector<ScalarSeries> chains;
  for (int c = 0; c < 4; ++c) chains.push_back(white_noise(5000, 70 + c));
  const double r = rhat(chains);
  CHECK(r >= 0.99);
  CHECK(r <= 1.05);
}

TEST_CASE("rhat flags chains stuck in distant modes") {
  std::vector<ScalarSeries> chains;
  RngStream rng(80, 0, 0);
  for (int c = 0; c < 2; ++c) {
    ScalarSeries s;
    const double offset = c == 0 ? 0.0 : 10.0;
    for (int i = 0; i < 2000; ++i) s.values.push_back(offset + 0.3 * rng.gaussian());
    chains.push_back(std::move(s));
  }
  CHECK(rhat(chains) > 1.5);
}

TEST_CASE("rhat shape validation") {
  std::vector<ScalarSeries> single = {white_noise(100, 90)};
  CHECK_THROWS_AS(rhat(single), ShapeMismatch);
  std::vector<ScalarSeries> ragged = {white_noise(100, 91), white_noise(99, 92)};
  CHECK_THROWS_AS(rhat(ragged), ShapeMismatch);
}

TEST_CASE("summary bundles the pieces") {
  ChainRecord rec;
  RngStream rng(95, 0, 0);
  rec.samples.push_back(Vector::Zero(2));
  for (int i = 0; i < 2000; ++i) {
    Vector q(2);
    q << rng.gaussian(), rng.gaussian();
    rec.samples.push_back(q);
    rec.selected.push_back(1);
    rec.moved.push_back(1);
  }
  const DiagnosticsSummary s = summarize_chain(rec, estimand_norm2(), 10);
  CHECK(s.move_rate == 1.0);
  CHECK(s.ess > 0.0);
  CHECK(s.ess <= 2001.0 * 1.2);
  CHECK(s.samples_per_effective_sample ==
        doctest::Approx(2001.0 / s.ess).epsilon(1e-12));
  CHECK(s.autocorr.size() == 11);
  CHECK(s.autocorr[0] == 1.0);
  CHECK_FALSE(s.running_mean.empty());
}

TEST_SUITE_END();
