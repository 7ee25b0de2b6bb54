#ifndef PMCMC_REGISTRY_HPP
#define PMCMC_REGISTRY_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "pmcmc/config.hpp"
#include "pmcmc/kernel.hpp"
#include "pmcmc/mpcn.hpp"
#include "pmcmc/parallel.hpp"

namespace pmcmc {

// A registered target as consumed by the samplers. log_density is always
// present; the gradient and the Gaussian base-measure decomposition are
// filled only where the target supports them.
struct TargetHandle {
  int dim = 0;
  std::function<double(const Vector&)> log_density;
  std::function<Vector(const Vector&)> grad_neg_log_density;
  std::optional<GaussianBasis> basis;
  std::function<double(const Vector&)> potential;  // phi paired with basis
};

bool target_id_known(const std::string& id);
bool sampler_id_known(const std::string& id);

// Target ids: "gaussian" (dim, variance), "mixture-grid" (k),
// "toy-inverse" (no parameters). Unknown parameter keys raise ConfigError.
TargetHandle make_target(const std::string& id, const ParamMap& params);

// Exactly one of the two pointers is set, depending on whether the id
// names a single-jump or a resampling sampler.
struct SamplerHandle {
  std::unique_ptr<Sampler> single;
  std::unique_ptr<ResamplingSampler> resampling;
  std::uint64_t n_jumps = 1;
};

// Sampler ids: "rw-multi", "mpcn", "mpcn-resample", "mhmc",
// "mhmc-resample", "simplicial".
SamplerHandle make_sampler(const std::string& id, const ParamMap& params,
                           const TargetHandle& target,
                           const WorkerPool* pool = nullptr);

}  // namespace pmcmc

#endif
