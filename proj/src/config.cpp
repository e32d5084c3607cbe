#include "thanos/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "thanos/errors.hpp"

namespace thanos {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

class KeyValues {
 public:
  explicit KeyValues(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
      values_[key] = val;
    }
  }

  std::optional<std::string> get(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    used_.insert(it->first);
    return it->second;
  }

  double get_double(const std::string& key, double dflt) {
    auto v = get(key);
    if (!v) return dflt;
    try {
      std::size_t used = 0;
      const double x = std::stod(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError(key + ": expected a number, got '" + *v + "'");
    }
  }

  long get_long(const std::string& key, long dflt) {
    auto v = get(key);
    if (!v) return dflt;
    try {
      std::size_t used = 0;
      const long x = std::stol(*v, &used);
      if (used != v->size()) throw std::invalid_argument(*v);
      return x;
    } catch (const std::exception&) {
      throw ConfigError(key + ": expected an integer, got '" + *v + "'");
    }
  }

  bool get_bool(const std::string& key, bool dflt) {
    auto v = get(key);
    if (!v) return dflt;
    if (*v == "true" || *v == "1") return true;
    if (*v == "false" || *v == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + *v + "'");
  }

  std::string get_string(const std::string& key, const std::string& dflt) {
    auto v = get(key);
    return v ? *v : dflt;
  }

  void check_all_used() const {
    for (const auto& [key, val] : values_) {
      if (!used_.count(key))
        throw ConfigError("unknown config key: " + key);
    }
  }

 private:
  std::map<std::string, std::string> values_;
  std::set<std::string> used_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& path) {
  KeyValues kv(path);
  ExperimentConfig cfg;

  cfg.problem.n = static_cast<int>(kv.get_long("problem.n", cfg.problem.n));
  cfg.problem.m = static_cast<int>(kv.get_long("problem.m", cfg.problem.m));
  cfg.problem.d = static_cast<int>(kv.get_long("problem.d", cfg.problem.d));
  cfg.problem.p = static_cast<int>(kv.get_long("problem.p", cfg.problem.p));
  cfg.problem.mu = kv.get_double("problem.mu", cfg.problem.mu);
  const std::string reg = kv.get_string("problem.reg", "l1");
  if (reg == "l1") cfg.problem.reg = RegKind::L1;
  else if (reg == "l21") cfg.problem.reg = RegKind::L21;
  else throw ConfigError("problem.reg: expected l1 or l21, got '" + reg + "'");
  const std::string data = kv.get_string("problem.data", "generate");
  if (data == "generate") cfg.problem.data = ExperimentConfig::Problem::DataSource::Generate;
  else if (data == "csv") cfg.problem.data = ExperimentConfig::Problem::DataSource::Csv;
  else throw ConfigError("problem.data: expected generate or csv, got '" + data + "'");
  cfg.problem.data_seed = static_cast<std::uint64_t>(kv.get_long("problem.data_seed", 0));
  cfg.problem.csv_path = kv.get_string("problem.csv_path", "");
  cfg.problem.csv_header = kv.get_bool("problem.csv_header", false);

  const std::string kind = kv.get_string("graph.kind", "er");
  if (kind == "er") cfg.graph.kind = ExperimentConfig::GraphSpec::Kind::ErdosRenyi;
  else if (kind == "ring") cfg.graph.kind = ExperimentConfig::GraphSpec::Kind::Ring;
  else if (kind == "complete") cfg.graph.kind = ExperimentConfig::GraphSpec::Kind::Complete;
  else if (kind == "star") cfg.graph.kind = ExperimentConfig::GraphSpec::Kind::Star;
  else throw ConfigError("graph.kind: expected er|ring|complete|star, got '" + kind + "'");
  cfg.graph.prob = kv.get_double("graph.prob", cfg.graph.prob);
  cfg.graph.seed = static_cast<std::uint64_t>(kv.get_long("graph.seed", 0));
  cfg.graph.edge_list_path = kv.get_string("graph.edge_list_path", "");

  const std::string eta = kv.get_string("solver.eta", "bb");
  if (eta == "bb") {
    cfg.solver.step_mode = SolverConfig::StepMode::BB;
  } else {
    cfg.solver.step_mode = SolverConfig::StepMode::Fixed;
    try {
      std::size_t used = 0;
      cfg.solver.eta = std::stod(eta, &used);
      if (used != eta.size() || !(cfg.solver.eta > 0.0)) throw std::invalid_argument(eta);
    } catch (const std::exception&) {
      throw ConfigError("solver.eta: expected 'bb' or a positive number, got '" + eta + "'");
    }
  }
  cfg.solver.beta = kv.get_double("solver.beta", 1.0);
  const std::string sigma_mode = kv.get_string("solver.sigma_mode", "power");
  const double sigma0 = kv.get_double("solver.sigma0", 1.0);
  const double sigma_exp = kv.get_double("solver.sigma_exponent", 1.0 / 3.0);
  if (sigma_mode == "fixed") cfg.solver.sigma_schedule = SigmaSchedule::fixed(sigma0);
  else if (sigma_mode == "power") cfg.solver.sigma_schedule = SigmaSchedule::power(sigma0, sigma_exp);
  else throw ConfigError("solver.sigma_mode: expected fixed or power, got '" + sigma_mode + "'");
  cfg.solver.max_iters = kv.get_long("solver.max_iters", 3000);
  cfg.solver.stop_tol = kv.get_double("solver.stop_tol", 0.0);
  cfg.solver.eta_min = kv.get_double("solver.eta_min", 1e-6);
  cfg.solver.eta_max = kv.get_double("solver.eta_max", 1.0);

  const std::string init = kv.get_string("init.mode", "svd");
  if (init == "svd") cfg.init.mode = ExperimentConfig::Init::Mode::Svd;
  else if (init == "random") cfg.init.mode = ExperimentConfig::Init::Mode::Random;
  else throw ConfigError("init.mode: expected svd or random, got '" + init + "'");
  cfg.init.seed = static_cast<std::uint64_t>(kv.get_long("init.seed", 0));

  cfg.output.metrics_path = kv.get_string("output.metrics_path", "metrics.csv");
  cfg.output.reference_path = kv.get_string("output.reference_path", "");
  cfg.output.graph_path = kv.get_string("output.graph_path", "");
  cfg.output.skip_reference = kv.get_bool("output.skip_reference", false);

  cfg.reference.sigma_final = kv.get_double("reference.sigma_final", 1e-3);
  cfg.reference.tol = kv.get_double("reference.tol", 1e-6);
  cfg.reference.max_iters = kv.get_long("reference.max_iters", 100000);

  cfg.align_columns = kv.get_bool("align_columns", false);

  kv.check_all_used();

  // Cross-field validation, all violations named by field path.
  if (cfg.problem.n < 1) throw ConfigError("problem.n: must be >= 1");
  if (cfg.problem.p < 1 || cfg.problem.p > cfg.problem.n)
    throw ConfigError("problem.p: must satisfy 1 <= p <= n");
  if (cfg.problem.d < 1) throw ConfigError("problem.d: must be >= 1");
  if (cfg.problem.m < cfg.problem.d) throw ConfigError("problem.m: must be >= problem.d");
  if (!(cfg.problem.mu > 0.0)) throw ConfigError("problem.mu: must be positive");
  if (cfg.problem.data == ExperimentConfig::Problem::DataSource::Csv &&
      cfg.problem.csv_path.empty())
    throw ConfigError("problem.csv_path: required when problem.data = csv");
  if (!(cfg.graph.prob > 0.0) || cfg.graph.prob > 1.0)
    throw ConfigError("graph.prob: must be in (0, 1]");
  if (cfg.solver.max_iters < 0) throw ConfigError("solver.max_iters: must be >= 0");
  if (!(cfg.solver.beta > 0.0)) throw ConfigError("solver.beta: must be positive");
  if (cfg.solver.eta_min > cfg.solver.eta_max)
    throw ConfigError("solver.eta_min: must not exceed solver.eta_max");
  if (!(sigma0 > 0.0)) throw ConfigError("solver.sigma0: must be positive");
  return cfg;
}

}  // namespace thanos
