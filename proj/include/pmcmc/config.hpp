#ifndef PMCMC_CONFIG_HPP
#define PMCMC_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

namespace pmcmc {

using ParamMap = std::map<std::string, std::string>;

// Parsed experiment document with [sampler]/[target]/[run] sections.
struct ExperimentConfig {
  std::string sampler_id;
  ParamMap sampler_params;
  std::string target_id;
  ParamMap target_params;
  std::uint64_t n_iters = 0;
  std::uint64_t n_chains = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;  // 0 selects the hardware concurrency
  std::uint64_t thinning = 1;
  std::string out_dir;
};

// Parses and validates a config document. Unknown [run] keys, malformed
// lines and bad counts raise ParseError with line context; ids absent
// from the registries raise UnknownSampler / UnknownTarget.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace pmcmc

#endif
