#include "pmcmc/registry.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "pmcmc/mhmc.hpp"
#include "pmcmc/rw_multi.hpp"
#include "pmcmc/simplicial.hpp"
#include "pmcmc/targets.hpp"

namespace pmcmc {

namespace {

void reject_unknown_keys(const ParamMap& params, const std::set<std::string>& allowed,
                         const std::string& context) {
  for (const auto& [key, value] : params)
    if (allowed.find(key) == allowed.end())
      throw ConfigError(context + ": unknown parameter '" + key + "'");
}

double get_double(const ParamMap& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  double out = 0.0;
  const auto& v = it->second;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("bad numeric value for '" + key + "'");
  return out;
}

std::int64_t get_int(const ParamMap& params, const std::string& key,
                     std::int64_t fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  std::int64_t out = 0;
  const auto& v = it->second;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    throw ConfigError("bad integer value for '" + key + "'");
  return out;
}

std::string get_string(const ParamMap& params, const std::string& key,
                       const std::string& fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

Vector parse_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string field;
  while (std::getline(in, field, ',')) {
    double x = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), x);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size())
      throw ConfigError("bad list entry for '" + key + "'");
    values.push_back(x);
  }
  if (values.empty()) throw ConfigError("empty list for '" + key + "'");
  Vector out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i];
  return out;
}

WeightMode parse_weight_mode(const ParamMap& params) {
  const std::string mode = get_string(params, "weight_mode", "barker");
  if (mode == "barker") return WeightMode::kBarker;
  if (mode == "mh") return WeightMode::kMhWedge;
  throw ConfigError("weight_mode must be 'barker' or 'mh'");
}

std::vector<double> parse_bar_alpha(const ParamMap& params, int p) {
  if (params.find("bar_alpha") == params.end()) return {};
  const double a = get_double(params, "bar_alpha", 0.0);
  if (!(a >= 0.0)) throw ConfigError("bar_alpha must be >= 0");
  return std::vector<double>(static_cast<std::size_t>(p), a);
}

}  // namespace

bool target_id_known(const std::string& id) {
  return id == "gaussian" || id == "mixture-grid" || id == "toy-inverse";
}

bool sampler_id_known(const std::string& id) {
  return id == "rw-multi" || id == "pcn" || id == "mpcn" ||
         id == "mpcn-resample" || id == "mhmc" || id == "mhmc-resample" ||
         id == "simplicial";
}

TargetHandle make_target(const std::string& id, const ParamMap& params) {
  TargetHandle handle;
  if (id == "gaussian") {
    reject_unknown_keys(params, {"dim", "variance", "variances"}, "target gaussian");
    Vector variances;
    if (params.count("variances")) {
      variances = parse_list(params.at("variances"), "variances");
    } else {
      const int dim = static_cast<int>(get_int(params, "dim", 2));
      if (dim < 1) throw ConfigError("target gaussian: dim must be >= 1");
      variances = Vector::Constant(dim, get_double(params, "variance", 1.0));
    }
    GaussianTarget t{Vector::Zero(variances.size()), variances};
    handle.dim = static_cast<int>(variances.size());
    handle.log_density = [t](const Vector& x) { return gaussian_log_density(x, t); };
    handle.grad_neg_log_density = [t](const Vector& x) {
      return gaussian_grad_neg_log_density(x, t);
    };
    handle.basis = GaussianBasis(variances);
    handle.potential = [](const Vector&) { return 0.0; };
    return handle;
  }
  if (id == "mixture-grid") {
    reject_unknown_keys(params, {"k"}, "target mixture-grid");
    const int k = static_cast<int>(get_int(params, "k", 10));
    const MixtureTarget t = MixtureTarget::grid(k);
    handle.dim = t.dim();
    handle.log_density = [t](const Vector& x) { return mixture_log_density(x, t); };
    handle.grad_neg_log_density = [t](const Vector& x) {
      return mixture_grad_neg_log_density(x, t);
    };
    return handle;
  }
  if (id == "toy-inverse") {
    reject_unknown_keys(params, {}, "target toy-inverse");
    const ToyInverseProblem prob;
    const GaussianBasis basis = toy_prior_basis(prob);
    handle.dim = basis.dimension();
    handle.basis = basis;
    handle.potential = [prob](const Vector& q) { return toy_potential(q, prob); };
    handle.log_density = [prob, basis](const Vector& q) {
      double log_prior = 0.0;
      for (int k = 0; k < q.size(); ++k)
        log_prior -= 0.5 * q[k] * q[k] / basis.eigenvalues[k];
      return log_prior - toy_potential(q, prob);
    };
    return handle;
  }
  throw UnknownTarget(id);
}

SamplerHandle make_sampler(const std::string& id, const ParamMap& params,
                           const TargetHandle& target, const WorkerPool* pool) {
  SamplerHandle handle;
  if (id == "rw-multi") {
    reject_unknown_keys(params, {"p", "r", "scale", "scales", "rate", "shift"},
                        "sampler rw-multi");
    const int p = static_cast<int>(get_int(params, "p", 1));
    const std::string family = get_string(params, "r", "gaussian");
    RwProposalDensity r;
    if (family == "gaussian") {
      r = rw_isotropic_gaussian(target.dim, get_double(params, "scale", 1.0));
    } else if (family == "diag-gaussian") {
      r = rw_diagonal_gaussian(parse_list(
          get_string(params, "scales", get_string(params, "scale", "1")), "scales"));
    } else if (family == "uniform-box") {
      r = rw_uniform_box(target.dim, get_double(params, "scale", 1.0));
    } else if (family == "shifted-exp") {
      r = rw_shifted_exponential(target.dim, get_double(params, "rate", 1.0),
                                 get_double(params, "shift", 1.0));
    } else {
      throw ConfigError("rw-multi: unknown proposal family '" + family + "'");
    }
    handle.single = std::make_unique<RwMultiSampler>(target.log_density, target.dim,
                                                     p, std::move(r), pool);
    return handle;
  }
  if (id == "pcn") {
    reject_unknown_keys(params, {"rho"}, "sampler pcn");
    if (!target.basis || !target.potential)
      throw ConfigError("pcn: target has no Gaussian base-measure form");
    PotentialTarget pt{target.potential, *target.basis};
    handle.single =
        std::make_unique<PcnSampler>(std::move(pt), get_double(params, "rho", 0.9));
    return handle;
  }
  if (id == "mpcn" || id == "mpcn-resample") {
    if (!target.basis || !target.potential)
      throw ConfigError(id + ": target has no Gaussian base-measure form");
    const double rho = get_double(params, "rho", 0.7);
    const int p = static_cast<int>(get_int(params, "p", 10));
    PotentialTarget pt{target.potential, *target.basis};
    if (id == "mpcn") {
      reject_unknown_keys(params, {"rho", "p", "weight_mode", "bar_alpha"},
                          "sampler mpcn");
      const WeightMode mode = parse_weight_mode(params);
      handle.single = std::make_unique<MpcnSampler>(std::move(pt), rho, p, mode,
                                                    parse_bar_alpha(params, p), pool);
    } else {
      reject_unknown_keys(params, {"rho", "p", "n_jumps"}, "sampler mpcn-resample");
      handle.n_jumps = static_cast<std::uint64_t>(get_int(params, "n_jumps", 1));
      handle.resampling =
          std::make_unique<MpcnResamplingSampler>(std::move(pt), rho, p, pool);
    }
    return handle;
  }
  if (id == "mhmc" || id == "mhmc-resample") {
    if (!target.grad_neg_log_density)
      throw ConfigError(id + ": target exposes no gradient");
    const double delta = get_double(params, "delta", 0.1);
    const int p = static_cast<int>(get_int(params, "p", 10));
    Vector mass;
    if (params.count("mass")) mass = parse_list(params.at("mass"), "mass");
    else mass = Vector::Ones(target.dim);
    if (mass.size() == 1 && target.dim > 1)
      mass = Vector::Constant(target.dim, mass[0]);
    if (mass.size() != target.dim)
      throw ConfigError(id + ": mass diagonal needs 1 or dim entries");
    // The HMC potential is the full negative log target density.
    auto neg_log = [f = target.log_density](const Vector& q) { return -f(q); };
    HamiltonianSystem sys(neg_log, target.grad_neg_log_density, mass, delta);
    if (id == "mhmc") {
      reject_unknown_keys(params, {"delta", "p", "bar_alpha", "mass"}, "sampler mhmc");
      handle.single = std::make_unique<MhmcSampler>(std::move(sys), p,
                                                    parse_bar_alpha(params, p));
    } else {
      reject_unknown_keys(params, {"delta", "p", "bar_alpha", "mass", "n_jumps",
                                   "weight_mode"},
                          "sampler mhmc-resample");
      handle.n_jumps = static_cast<std::uint64_t>(get_int(params, "n_jumps", 1));
      handle.resampling = std::make_unique<MhmcResamplingSampler>(
          std::move(sys), p, parse_weight_mode(params), parse_bar_alpha(params, p));
    }
    return handle;
  }
  if (id == "simplicial") {
    reject_unknown_keys(params,
                        {"p", "lambda_law", "lambda", "lambda_p1", "lambda_p2",
                         "weight_mode", "bar_alpha"},
                        "sampler simplicial");
    const int p = static_cast<int>(get_int(params, "p", target.dim));
    const std::string law_name = get_string(params, "lambda_law", "const");
    EdgeLengthLaw law;
    if (law_name == "const") {
      law = EdgeLengthLaw::constant(get_double(params, "lambda", 1.0));
    } else if (law_name == "lognormal") {
      law = EdgeLengthLaw::log_normal(get_double(params, "lambda_p1", 0.0),
                                      get_double(params, "lambda_p2", 0.5));
    } else if (law_name == "gamma") {
      law = EdgeLengthLaw::gamma(get_double(params, "lambda_p1", 2.0),
                                 get_double(params, "lambda_p2", 0.5));
    } else {
      throw ConfigError("simplicial: unknown lambda_law '" + law_name + "'");
    }
    handle.single = std::make_unique<SimplicialSampler>(
        target.log_density, target.dim, p, law, parse_weight_mode(params),
        parse_bar_alpha(params, p), pool);
    return handle;
  }
  throw UnknownSampler(id);
}

}  // namespace pmcmc
