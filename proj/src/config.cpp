#include "pmcmc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "pmcmc/errors.hpp"
#include "pmcmc/registry.hpp"

namespace pmcmc {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_count(const std::string& value, const std::string& key,
                          int line_no) {
  if (!value.empty() && value[0] == '-')
    throw ParseError("line " + std::to_string(line_no) + ": " + key +
                     " must be nonnegative");
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    throw ParseError("line " + std::to_string(line_no) + ": bad integer for " + key);
  return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  bool saw_n_iters = false;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(line_no) + ": unterminated section");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "sampler" && section != "target" && section != "run")
        throw ParseError("line " + std::to_string(line_no) + ": unknown section [" +
                         section + "]");
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError("line " + std::to_string(line_no) + ": empty key or value");

    if (section == "sampler") {
      if (key == "id") cfg.sampler_id = value;
      else cfg.sampler_params[key] = value;
    } else if (section == "target") {
      if (key == "id") cfg.target_id = value;
      else cfg.target_params[key] = value;
    } else if (section == "run") {
      if (key == "n_iters") {
        cfg.n_iters = parse_count(value, key, line_no);
        saw_n_iters = true;
      } else if (key == "n_chains") {
        cfg.n_chains = parse_count(value, key, line_no);
      } else if (key == "seed") {
        cfg.seed = parse_count(value, key, line_no);
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(parse_count(value, key, line_no));
      } else if (key == "thinning") {
        cfg.thinning = parse_count(value, key, line_no);
      } else if (key == "out") {
        cfg.out_dir = value;
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": unknown [run] key '" +
                         key + "'");
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": key outside a section");
    }
  }

  if (cfg.sampler_id.empty()) throw ParseError("missing [sampler] id");
  if (cfg.target_id.empty()) throw ParseError("missing [target] id");
  if (!saw_n_iters) throw ParseError("missing [run] n_iters");
  if (cfg.n_iters < 1) throw ParseError("n_iters must be >= 1");
  if (cfg.n_chains < 1) throw ParseError("n_chains must be >= 1");
  if (cfg.thinning < 1) throw ParseError("thinning must be >= 1");
  if (!sampler_id_known(cfg.sampler_id)) throw UnknownSampler(cfg.sampler_id);
  if (!target_id_known(cfg.target_id)) throw UnknownTarget(cfg.target_id);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace pmcmc
