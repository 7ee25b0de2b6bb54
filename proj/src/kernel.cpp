#include "pmcmc/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pmcmc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double x : v) m = std::max(m, x);
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

AcceptanceVector barker_weights(const std::vector<double>& log_masses) {
  const double lse = log_sum_exp(log_masses);
  if (lse == kNegInf) throw AllMassesZero();
  AcceptanceVector out;
  out.probs.resize(log_masses.size());
  for (std::size_t j = 0; j < log_masses.size(); ++j)
    out.probs[j] = std::exp(log_masses[j] - lse);
  return out;
}

AcceptanceVector barker_weights_or_stay(const std::vector<double>& log_masses,
                                        int stay_slot) {
  const double lse = log_sum_exp(log_masses);
  AcceptanceVector out;
  out.probs.assign(log_masses.size(), 0.0);
  if (lse == kNegInf) {
    out.probs[stay_slot] = 1.0;
    return out;
  }
  for (std::size_t j = 0; j < log_masses.size(); ++j)
    out.probs[j] = std::exp(log_masses[j] - lse);
  return out;
}

AcceptanceVector mh_wedge_weights(const std::vector<double>& log_masses,
                                  int k_cur,
                                  const std::vector<double>& bar_alpha) {
  const int n = static_cast<int>(log_masses.size());
  if (k_cur < 0 || k_cur >= n)
    throw DimensionError("mh_wedge_weights: k_cur out of range");
  if (static_cast<int>(bar_alpha.size()) != n - 1)
    throw DimensionError("mh_wedge_weights: expected one weight per non-current slot");
  double budget = 0.0;
  for (double a : bar_alpha) budget += a;
  if (budget > 1.0 + 1e-12)
    throw WeightBudgetExceeded("mh_wedge_weights: sum of bar_alpha exceeds 1");

  AcceptanceVector out;
  out.probs.assign(n, 0.0);
  const double lm_cur = log_masses[k_cur];
  double off = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == k_cur) continue;
    const double alpha = bar_alpha[j < k_cur ? j : j - 1];
    double wedge;
    if (log_masses[j] == kNegInf) {
      wedge = 0.0;
    } else if (log_masses[j] >= lm_cur) {
      wedge = 1.0;
    } else {
      wedge = std::exp(log_masses[j] - lm_cur);
    }
    out.probs[j] = alpha * wedge;
    off += out.probs[j];
  }
  out.probs[k_cur] = std::max(0.0, 1.0 - off);
  return out;
}

int categorical_draw(const AcceptanceVector& probs, double u) {
  double cum = 0.0;
  const int n = static_cast<int>(probs.probs.size());
  for (int j = 0; j < n; ++j) {
    cum += probs.probs[j];
    if (cum > u) return j;
  }
  // Rounding left cum marginally below u; fall back to the last live slot.
  for (int j = n - 1; j >= 0; --j)
    if (probs.probs[j] > 0.0) return j;
  return n - 1;
}

int canonical_jump_draw(const AcceptanceVector& row, int k_cur, double u,
                        int& slot) {
  const int n = static_cast<int>(row.probs.size());
  double cum = row.probs[k_cur];
  if (cum > u) {
    slot = k_cur;
    return 0;
  }
  int canon = 1;
  for (int j = 0; j < n; ++j) {
    if (j == k_cur) continue;
    cum += row.probs[j];
    if (cum > u) {
      slot = j;
      return canon;
    }
    ++canon;
  }
  slot = k_cur;
  return 0;
}

bool operator==(const ChainRecord& a, const ChainRecord& b) {
  if (a.samples.size() != b.samples.size() || a.selected != b.selected ||
      a.moved != b.moved || a.extras != b.extras)
    return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i].size() != b.samples[i].size()) return false;
    if (a.samples[i] != b.samples[i]) return false;
  }
  return true;
}

ChainRecord run_chain(const Sampler& sampler, const Vector& init,
                      std::uint64_t n_iters, std::uint64_t seed,
                      bool record_masses) {
  ChainRecord rec;
  rec.samples.reserve(n_iters + 1);
  rec.selected.reserve(n_iters);
  rec.moved.reserve(n_iters);
  rec.samples.push_back(init);
  Vector q = init;
  for (std::uint64_t i = 0; i < n_iters; ++i) {
    StepResult r = sampler.step(q, i, seed);
    if (!r.state.allFinite()) throw NonFiniteState(i);
    q = r.state;
    rec.samples.push_back(std::move(r.state));
    rec.selected.push_back(r.selected);
    rec.moved.push_back(r.moved ? 1 : 0);
    if (record_masses) rec.extras.push_back(std::move(r.log_masses));
  }
  return rec;
}

ChainRecord run_resampling_chain(const ResamplingSampler& sampler,
                                 const Vector& init, std::uint64_t n_outer,
                                 std::uint64_t n_jumps, std::uint64_t seed,
                                 bool record_masses) {
  if (n_jumps < 1)
    throw ConfigError("run_resampling_chain: n_jumps must be >= 1");
  const int slots = sampler.proposal_count() + 1;
  ChainRecord rec;
  rec.samples.reserve(n_outer * n_jumps + 1);
  rec.samples.push_back(init);
  Vector q = init;
  int k_cur = 0;

  for (std::uint64_t outer = 0; outer < n_outer; ++outer) {
    const ProposalCloud cloud = sampler.make_cloud(q, k_cur, outer, seed);
    RngStream selection(seed, outer, RngStream::kSelectionSlot);
    for (std::uint64_t l = 0; l < n_jumps; ++l) {
      const AcceptanceVector row = sampler.jump_row(cloud, k_cur);
      int slot = k_cur;
      const int canon = canonical_jump_draw(row, k_cur, selection.uniform(), slot);
      const Vector& x = cloud.slot(slot);
      if (!x.allFinite()) throw NonFiniteState(outer);
      const bool moved = canon != 0 && x != cloud.slot(k_cur);
      rec.samples.push_back(x);
      rec.selected.push_back(canon);
      rec.moved.push_back(moved ? 1 : 0);
      if (record_masses) {
        std::vector<double> snapshot;
        snapshot.reserve(slots);
        snapshot.push_back(cloud.log_masses[k_cur]);
        for (int j = 0; j < slots; ++j)
          if (j != k_cur) snapshot.push_back(cloud.log_masses[j]);
        rec.extras.push_back(std::move(snapshot));
      }
      k_cur = slot;
    }
    q = cloud.slot(k_cur);
  }
  return rec;
}

}  // namespace pmcmc
