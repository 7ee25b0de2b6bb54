#include "pmcmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace pmcmc {

Estimand estimand_norm2() {
  return [](const Vector& q) { return q.squaredNorm(); };
}

Estimand estimand_coord(int k) {
  return [k](const Vector& q) {
    if (k < 0 || k >= q.size())
      throw DimensionError("estimand_coord: coordinate out of range");
    return q[k];
  };
}

ScalarSeries series_from_chain(const ChainRecord& record, const Estimand& f) {
  ScalarSeries s;
  s.values.reserve(record.samples.size());
  for (const auto& q : record.samples) s.values.push_back(f(q));
  return s;
}

double move_rate(const ChainRecord& record) {
  if (record.iterations() == 0) throw EmptyChain("move_rate: no iterations");
  std::size_t moves = 0;
  for (char m : record.moved) moves += (m != 0);
  return static_cast<double>(moves) / static_cast<double>(record.iterations());
}

namespace {

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

// Lag-t autocorrelation with per-lag term count normalization.
double acf_at(const std::vector<double>& v, double mean, double var0, int t) {
  const std::size_t n = v.size();
  double acc = 0.0;
  for (std::size_t i = 0; i + t < n; ++i)
    acc += (v[i] - mean) * (v[i + t] - mean);
  const double value = acc / static_cast<double>(n - t) / var0;
  return std::clamp(value, -1.0, 1.0);
}

double variance0(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(v.size());
}

}  // namespace

std::vector<double> autocorrelation(const ScalarSeries& series, int max_lag) {
  const auto& v = series.values;
  if (v.size() < 2) throw EmptyChain("autocorrelation: need at least 2 values");
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= v.size())
    throw DimensionError("autocorrelation: max_lag must be below the length");
  const double mean = mean_of(v);
  const double var0 = variance0(v, mean);
  if (var0 <= 0.0) throw ZeroVariance("autocorrelation: constant series");
  std::vector<double> out(max_lag + 1);
  out[0] = 1.0;
  for (int t = 1; t <= max_lag; ++t) out[t] = acf_at(v, mean, var0, t);
  return out;
}

double ess(const ScalarSeries& series) {
  const auto& v = series.values;
  if (v.size() < 2) throw EmptyChain("ess: need at least 2 values");
  const double mean = mean_of(v);
  const double var0 = variance0(v, mean);
  if (var0 <= 0.0) throw ZeroVariance("ess: zero sample variance");
  const std::size_t n = v.size();
  double tau = 1.0;
  for (std::size_t t = 1; t + 1 < n; t += 2) {
    const double pair = acf_at(v, mean, var0, static_cast<int>(t)) +
                        acf_at(v, mean, var0, static_cast<int>(t + 1));
    if (pair <= 0.0) break;
    tau += 2.0 * pair;
  }
  return static_cast<double>(n) / tau;
}

double ks_distance(const ScalarSeries& series,
                   const std::function<double(double)>& reference_cdf) {
  if (series.values.size() < 100)
    throw EmptyChain("ks_distance: need at least 100 points");
  std::vector<double> sorted = series.values;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = reference_cdf(sorted[i]);
    sup = std::max(sup, std::abs(f - static_cast<double>(i) / n));
    sup = std::max(sup, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return sup;
}

double ks_critical_1pct(std::size_t n) {
  return 1.63 / std::sqrt(static_cast<double>(n));
}

double rhat(const std::vector<ScalarSeries>& chains) {
  if (chains.size() < 2) throw ShapeMismatch("rhat: need at least 2 chains");
  const std::size_t len = chains.front().values.size();
  for (const auto& c : chains)
    if (c.values.size() != len)
      throw ShapeMismatch("rhat: chains must have equal lengths");
  if (len < 4) throw ShapeMismatch("rhat: chains must have length >= 4");

  // Split each chain in half.
  std::vector<std::vector<double>> seqs;
  const std::size_t half = len / 2;
  for (const auto& c : chains) {
    seqs.emplace_back(c.values.begin(), c.values.begin() + half);
    seqs.emplace_back(c.values.end() - half, c.values.end());
  }

  const double m = static_cast<double>(seqs.size());
  const double n = static_cast<double>(half);
  std::vector<double> means(seqs.size());
  double grand = 0.0;
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    means[j] = mean_of(seqs[j]);
    grand += means[j];
  }
  grand /= m;

  double b = 0.0;
  for (double mu : means) b += (mu - grand) * (mu - grand);
  b *= n / (m - 1.0);

  double w = 0.0;
  for (std::size_t j = 0; j < seqs.size(); ++j) {
    double s2 = 0.0;
    for (double x : seqs[j]) s2 += (x - means[j]) * (x - means[j]);
    w += s2 / (n - 1.0);
  }
  w /= m;
  if (w <= 0.0) throw ZeroVariance("rhat: zero within-chain variance");

  const double var_plus = (n - 1.0) / n * w + b / n;
  return std::sqrt(var_plus / w);
}

DiagnosticsSummary summarize_chain(const ChainRecord& record, const Estimand& f,
                                   int max_lag) {
  DiagnosticsSummary out;
  out.move_rate = move_rate(record);
  const ScalarSeries s = series_from_chain(record, f);
  out.ess = ess(s);
  out.samples_per_effective_sample =
      static_cast<double>(s.values.size()) / out.ess;
  const int lag = std::min<int>(max_lag, static_cast<int>(s.values.size()) - 1);
  out.autocorr = autocorrelation(s, lag);

  const std::size_t stride = std::max<std::size_t>(1, s.values.size() / 100);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    acc += s.values[i];
    if ((i + 1) % stride == 0 || i + 1 == s.values.size())
      out.running_mean.push_back(acc / static_cast<double>(i + 1));
  }
  return out;
}

}  // namespace pmcmc
