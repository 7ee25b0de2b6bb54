#ifndef PMCMC_RUNNER_HPP
#define PMCMC_RUNNER_HPP

#include <json.hpp>
#include <string>

#include "pmcmc/config.hpp"

namespace pmcmc {

// Runs the configured experiment: n_chains chains with derived seeds,
// chain CSVs under out_dir when set, per-chain diagnostics and timings.
// Output is deterministic for a fixed seed and config regardless of the
// worker count.
nlohmann::json run_experiment(const ExperimentConfig& cfg);

// Named parameter studies. "toy-sweep" runs the rho x p grid of the toy
// inverse problem; "mixture-budget" compares one large-p chain against
// matched independent single-proposal chains on the mixture grid.
nlohmann::json run_preset(const std::string& name, const std::string& out_dir,
                          std::uint64_t seed, unsigned workers);

// Diagnostics for a persisted chain file. estimand_spec is "norm2" or
// "coord:k".
nlohmann::json diag_chain_file(const std::string& path,
                               const std::string& estimand_spec);

}  // namespace pmcmc

#endif
