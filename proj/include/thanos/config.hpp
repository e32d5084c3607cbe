#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "thanos/smoothing.hpp"
#include "thanos/tracker.hpp"

namespace thanos {

// Flat key=value experiment configuration. Unknown keys and malformed
// values raise ConfigError naming the offending field.
struct ExperimentConfig {
  struct Problem {
    int n = 10;
    int m = 320;
    int d = 32;
    int p = 3;
    double mu = 0.1;
    RegKind reg = RegKind::L1;
    enum class DataSource { Generate, Csv };
    DataSource data = DataSource::Generate;
    std::uint64_t data_seed = 0;
    std::string csv_path;
    bool csv_header = false;
  } problem;

  struct GraphSpec {
    enum class Kind { ErdosRenyi, Ring, Complete, Star };
    Kind kind = Kind::ErdosRenyi;
    double prob = 0.5;
    std::uint64_t seed = 0;
    std::string edge_list_path;  // load topology instead of generating
  } graph;

  SolverConfig solver;

  struct Init {
    enum class Mode { Svd, Random };
    Mode mode = Mode::Svd;
    std::uint64_t seed = 0;
  } init;

  struct Output {
    std::string metrics_path = "metrics.csv";
    std::string reference_path;  // load-or-solve-and-save when set
    std::string graph_path;      // save the realized topology when set
    bool skip_reference = false; // omit the dist column entirely
  } output;

  struct Reference {
    double sigma_final = 1e-3;
    double tol = 1e-6;
    long max_iters = 100000;
  } reference;

  bool align_columns = false;
};

ExperimentConfig parse_config(const std::string& path);

// Exit codes shared by the CLI: 0 ok, 2 config, 3 ingestion, 4 divergence.
int cmd_run(const ExperimentConfig& config);
int cmd_bounds(const ExperimentConfig& config);

}  // namespace thanos
