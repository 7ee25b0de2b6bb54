#ifndef PMCMC_DIAGNOSTICS_HPP
#define PMCMC_DIAGNOSTICS_HPP

#include <functional>
#include <vector>

#include "pmcmc/kernel.hpp"

namespace pmcmc {

// Scalar functional of a chain, e.g. the squared norm of the state.
struct ScalarSeries {
  std::vector<double> values;
};

using Estimand = std::function<double(const Vector&)>;
Estimand estimand_norm2();
Estimand estimand_coord(int k);

ScalarSeries series_from_chain(const ChainRecord& record, const Estimand& f);

// Fraction of iterations whose selected slot differs from the current one.
double move_rate(const ChainRecord& record);

// Autocorrelation normalized by lag 0, per-lag term counts, clamped to
// [-1, 1]. Entry t of the result is the lag-t value, entry 0 is exactly 1.
std::vector<double> autocorrelation(const ScalarSeries& series, int max_lag);

// Effective sample size n / (1 + 2 sum rho_t) with the Geyer
// initial-positive-sequence truncation (stop at the first nonpositive
// even/odd autocorrelation pair sum).
double ess(const ScalarSeries& series);

// Sup distance between the empirical CDF of the series and reference_cdf.
double ks_distance(const ScalarSeries& series,
                   const std::function<double(double)>& reference_cdf);

// 1% asymptotic Kolmogorov-Smirnov critical value.
double ks_critical_1pct(std::size_t n);

// Split potential scale reduction over two or more equal-length chains.
double rhat(const std::vector<ScalarSeries>& chains);

struct DiagnosticsSummary {
  double move_rate = 0.0;
  double ess = 0.0;
  double samples_per_effective_sample = 0.0;
  std::vector<double> autocorr;        // lags 0..max_lag
  std::vector<double> running_mean;    // decimated running ergodic average
};

DiagnosticsSummary summarize_chain(const ChainRecord& record, const Estimand& f,
                                   int max_lag = 50);

}  // namespace pmcmc

#endif
