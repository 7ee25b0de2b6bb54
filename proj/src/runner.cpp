#include "pmcmc/runner.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "pmcmc/csv_io.hpp"
#include "pmcmc/diagnostics.hpp"
#include "pmcmc/registry.hpp"
#include "pmcmc/rw_multi.hpp"
#include "pmcmc/targets.hpp"

namespace pmcmc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Wraps a sampler and records the wall time of each step.
class TimedSampler : public Sampler {
 public:
  TimedSampler(const Sampler& inner, std::vector<double>& times)
      : inner_(inner), times_(times) {}
  int dim() const override { return inner_.dim(); }
  StepResult step(const Vector& q, std::uint64_t iteration,
                  std::uint64_t seed) const override {
    const auto start = Clock::now();
    StepResult r = inner_.step(q, iteration, seed);
    times_.push_back(seconds_since(start));
    return r;
  }

 private:
  const Sampler& inner_;
  std::vector<double>& times_;
};

class TimedResamplingSampler : public ResamplingSampler {
 public:
  TimedResamplingSampler(const ResamplingSampler& inner, std::vector<double>& times)
      : inner_(inner), times_(times) {}
  int dim() const override { return inner_.dim(); }
  int proposal_count() const override { return inner_.proposal_count(); }
  ProposalCloud make_cloud(const Vector& q, int k_cur, std::uint64_t iteration,
                           std::uint64_t seed) const override {
    const auto start = Clock::now();
    ProposalCloud cloud = inner_.make_cloud(q, k_cur, iteration, seed);
    times_.push_back(seconds_since(start));
    return cloud;
  }
  AcceptanceVector jump_row(const ProposalCloud& cloud, int k) const override {
    return inner_.jump_row(cloud, k);
  }

 private:
  const ResamplingSampler& inner_;
  std::vector<double>& times_;
};

double median_excluding_warmup(std::vector<double> times, std::size_t warmup) {
  if (times.size() > warmup) times.erase(times.begin(), times.begin() + warmup);
  if (times.empty()) return 0.0;
  std::sort(times.begin(), times.end());
  const std::size_t mid = times.size() / 2;
  if (times.size() % 2 == 1) return times[mid];
  return 0.5 * (times[mid - 1] + times[mid]);
}

nlohmann::json config_echo(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["sampler"] = {{"id", cfg.sampler_id}};
  for (const auto& [k, v] : cfg.sampler_params) j["sampler"][k] = v;
  j["target"] = {{"id", cfg.target_id}};
  for (const auto& [k, v] : cfg.target_params) j["target"][k] = v;
  j["run"] = {{"n_iters", cfg.n_iters}, {"n_chains", cfg.n_chains},
              {"seed", cfg.seed},       {"workers", cfg.workers},
              {"thinning", cfg.thinning}, {"out", cfg.out_dir}};
  return j;
}

Estimand estimand_from_spec(const std::string& spec) {
  if (spec == "norm2") return estimand_norm2();
  if (spec.rfind("coord:", 0) == 0) {
    const std::string index = spec.substr(6);
    int k = 0;
    const auto res = std::from_chars(index.data(), index.data() + index.size(), k);
    if (res.ec != std::errc() || res.ptr != index.data() + index.size())
      throw ConfigError("bad coordinate in estimand '" + spec + "'");
    return estimand_coord(k);
  }
  throw ConfigError("unknown estimand '" + spec + "' (use norm2 or coord:k)");
}

nlohmann::json summary_json(const DiagnosticsSummary& s) {
  nlohmann::json j;
  j["move_rate"] = s.move_rate;
  j["ess"] = s.ess;
  j["samples_per_effective_sample"] = s.samples_per_effective_sample;
  j["autocorr"] = s.autocorr;
  j["running_mean"] = s.running_mean;
  return j;
}

// Very short or frozen chains have no usable correlation statistics;
// report the move rate and leave the rest null.
nlohmann::json safe_summary_json(const ChainRecord& record, const Estimand& f) {
  try {
    return summary_json(summarize_chain(record, f));
  } catch (const ZeroVariance&) {
  } catch (const EmptyChain&) {
  }
  nlohmann::json j;
  j["move_rate"] =
      record.iterations() == 0 ? nullptr : nlohmann::json(move_rate(record));
  j["ess"] = nullptr;
  j["samples_per_effective_sample"] = nullptr;
  return j;
}

}  // namespace

nlohmann::json run_experiment(const ExperimentConfig& cfg) {
  std::unique_ptr<WorkerPool> pool;
  if (cfg.workers == 0 || cfg.workers > 1)
    pool = std::make_unique<WorkerPool>(cfg.workers);

  const TargetHandle target = make_target(cfg.target_id, cfg.target_params);
  const SamplerHandle sampler =
      make_sampler(cfg.sampler_id, cfg.sampler_params, target, pool.get());

  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

  nlohmann::json report;
  report["config"] = config_echo(cfg);
  report["chains"] = nlohmann::json::array();

  const auto total_start = Clock::now();
  for (std::uint64_t c = 0; c < cfg.n_chains; ++c) {
    const std::uint64_t chain_seed = derive_chain_seed(cfg.seed, c);
    const Vector init = Vector::Zero(target.dim);
    std::vector<double> step_times;
    const auto chain_start = Clock::now();
    ChainRecord record;
    if (sampler.single) {
      TimedSampler timed(*sampler.single, step_times);
      record = run_chain(timed, init, cfg.n_iters, chain_seed);
    } else {
      TimedResamplingSampler timed(*sampler.resampling, step_times);
      record = run_resampling_chain(timed, init, cfg.n_iters, sampler.n_jumps,
                                    chain_seed);
    }
    const double wall = seconds_since(chain_start);

    nlohmann::json entry;
    entry["chain"] = c;
    entry["seed"] = chain_seed;
    entry["diagnostics"] = safe_summary_json(record, estimand_norm2());
    entry["iter_time_median_s"] = median_excluding_warmup(std::move(step_times), 10);
    entry["wall_time_s"] = wall;
    if (!cfg.out_dir.empty()) {
      const std::string file = cfg.out_dir + "/chain_" + std::to_string(c) + ".csv";
      write_chain_csv(file, record, cfg.thinning);
      entry["file"] = file;
    }
    report["chains"].push_back(std::move(entry));
  }
  report["total_wall_time_s"] = seconds_since(total_start);
  if (!cfg.out_dir.empty()) {
    std::ofstream out(cfg.out_dir + "/report.json");
    out << report.dump(2) << '\n';
  }
  return report;
}

namespace {

// Parameter grid of the toy problem study: per-cell move rate and ESS of
// the squared-norm estimand.
nlohmann::json preset_toy_sweep(const std::string& out_dir, std::uint64_t seed,
                                unsigned workers) {
  const std::vector<double> rhos = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
  const std::vector<int> ps = {10, 25, 50, 100};
  const std::uint64_t iters = 10000;

  std::unique_ptr<WorkerPool> pool;
  if (workers == 0 || workers > 1) pool = std::make_unique<WorkerPool>(workers);
  const TargetHandle target = make_target("toy-inverse", {});

  nlohmann::json cells = nlohmann::json::array();
  std::uint64_t cell_index = 0;
  for (const double rho : rhos) {
    for (const int p : ps) {
      PotentialTarget pt{target.potential, *target.basis};
      MpcnSampler sampler(pt, rho, p, WeightMode::kBarker, {}, pool.get());
      const ChainRecord record =
          run_chain(sampler, Vector::Zero(target.dim), iters,
                    derive_chain_seed(seed, cell_index));
      const DiagnosticsSummary s = summarize_chain(record, estimand_norm2());
      cells.push_back({{"rho", rho},
                       {"p", p},
                       {"move_rate", s.move_rate},
                       {"ess", s.ess},
                       {"samples_per_effective_sample",
                        s.samples_per_effective_sample}});
      ++cell_index;
    }
  }
  nlohmann::json report;
  report["preset"] = "toy-sweep";
  report["n_iters"] = iters;
  report["seed"] = seed;
  report["cells"] = std::move(cells);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/report.json");
    out << report.dump(2) << '\n';
  }
  return report;
}

// One multiproposal chain with a large cloud versus matched independent
// single-proposal chains started in mode 0. The multiproposal chain uses
// an inter-mode scale its cloud can afford; the single-proposal scale is
// set where mode escapes are possible but erratic, which is the regime
// that actually separates the independent chains.
nlohmann::json preset_mixture_budget(const std::string& out_dir,
                                     std::uint64_t seed, unsigned workers) {
  const int k_modes = 10;
  const std::uint64_t iters = 10000;
  const int p_large = 1000;
  const double sigma_large = 10.0;
  const double sigma_single = 4.0;
  const int n_single = 10;

  std::unique_ptr<WorkerPool> pool;
  if (workers == 0 || workers > 1) pool = std::make_unique<WorkerPool>(workers);
  const MixtureTarget mixture = MixtureTarget::grid(k_modes);
  auto log_target = [mixture](const Vector& x) {
    return mixture_log_density(x, mixture);
  };

  RwMultiSampler big(log_target, 2, p_large,
                     rw_isotropic_gaussian(2, sigma_large), pool.get());
  const ChainRecord multi =
      run_chain(big, Vector::Zero(2), iters, derive_chain_seed(seed, 0));

  // Assign each sample to the nearest mode center.
  std::vector<std::uint64_t> visits(k_modes, 0);
  for (const auto& q : multi.samples) {
    int best = 0;
    double best_dist = (q - mixture.centers[0]).squaredNorm();
    for (int i = 1; i < k_modes; ++i) {
      const double dist = (q - mixture.centers[i]).squaredNorm();
      if (dist < best_dist) {
        best_dist = dist;
        best = i;
      }
    }
    ++visits[best];
  }
  nlohmann::json freqs = nlohmann::json::array();
  for (int i = 0; i < k_modes; ++i)
    freqs.push_back(static_cast<double>(visits[i]) /
                    static_cast<double>(multi.samples.size()));

  std::vector<ScalarSeries> coord0;
  RwMultiSampler small(log_target, 2, 1, rw_isotropic_gaussian(2, sigma_single),
                       pool.get());
  for (int c = 0; c < n_single; ++c) {
    const ChainRecord rec = run_chain(small, Vector::Zero(2), iters,
                                      derive_chain_seed(seed, 100 + c));
    coord0.push_back(series_from_chain(rec, estimand_coord(0)));
  }

  nlohmann::json report;
  report["preset"] = "mixture-budget";
  report["n_iters"] = iters;
  report["seed"] = seed;
  report["multiproposal"] = {{"p", p_large},
                             {"scale", sigma_large},
                             {"mode_frequencies", freqs},
                             {"move_rate", move_rate(multi)}};
  report["single_chains"] = {{"count", n_single},
                             {"scale", sigma_single},
                             {"rhat_coord0", rhat(coord0)}};
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/report.json");
    out << report.dump(2) << '\n';
  }
  return report;
}

}  // namespace

nlohmann::json run_preset(const std::string& name, const std::string& out_dir,
                          std::uint64_t seed, unsigned workers) {
  if (name == "toy-sweep") return preset_toy_sweep(out_dir, seed, workers);
  if (name == "mixture-budget") return preset_mixture_budget(out_dir, seed, workers);
  throw ConfigError("unknown preset '" + name +
                    "' (available: toy-sweep, mixture-budget)");
}

nlohmann::json diag_chain_file(const std::string& path,
                               const std::string& estimand_spec) {
  const ChainRecord record = read_chain_csv(path);
  const Estimand f = estimand_from_spec(estimand_spec);
  series_from_chain(record, f);  // surface estimand errors before reporting
  nlohmann::json report;
  report["file"] = path;
  report["estimand"] = estimand_spec;
  report["samples"] = record.samples.size();
  report["diagnostics"] = safe_summary_json(record, f);
  return report;
}

}  // namespace pmcmc
