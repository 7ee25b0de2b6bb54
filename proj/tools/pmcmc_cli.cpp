#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "pmcmc/errors.hpp"
#include "pmcmc/runner.hpp"

namespace {

unsigned workers_from_env(unsigned fallback) {
  if (const char* env = std::getenv("PMCMC_WORKERS"))
    return static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel multiproposal MCMC experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "run an experiment from a config file");
  run->add_option("config", config_path, "config file path")->required();

  std::string preset_name, preset_out;
  std::uint64_t preset_seed = 0;
  unsigned preset_workers = 1;
  auto* preset = app.add_subcommand("preset", "run a named parameter study");
  preset->add_option("name", preset_name, "preset name")->required();
  preset->add_option("--out", preset_out, "output directory");
  preset->add_option("--seed", preset_seed, "run seed");
  preset->add_option("--workers", preset_workers, "worker count (0 = auto)");

  std::string diag_path, diag_estimand = "norm2";
  auto* diag = app.add_subcommand("diag", "diagnostics for a chain CSV");
  diag->add_option("chain", diag_path, "chain csv path")->required();
  diag->add_option("--estimand", diag_estimand, "norm2 or coord:k");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage problems share the config-error exit code; --help stays 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      pmcmc::ExperimentConfig cfg = pmcmc::load_config_file(config_path);
      cfg.workers = workers_from_env(cfg.workers);
      std::cout << pmcmc::run_experiment(cfg).dump(2) << '\n';
    } else if (*preset) {
      const unsigned workers = workers_from_env(preset_workers);
      std::cout << pmcmc::run_preset(preset_name, preset_out, preset_seed, workers)
                       .dump(2)
                << '\n';
    } else if (*diag) {
      std::cout << pmcmc::diag_chain_file(diag_path, diag_estimand).dump(2) << '\n';
    }
  } catch (const pmcmc::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const pmcmc::UnknownSampler& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const pmcmc::UnknownTarget& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const pmcmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const pmcmc::Error& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
