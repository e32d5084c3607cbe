#include <CLI11.hpp>
#include <Eigen/Core>
#include <iostream>

#include "thanos/config.hpp"
#include "thanos/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"decentralized smoothing gradient tracking over Stiefel manifolds"};
  app.require_subcommand(1);

  std::string config_path;
  bool csv_header = false;
  bool align_columns = false;
  int threads = 1;

  auto* run_cmd = app.add_subcommand("run", "run an experiment from a config file");
  run_cmd->add_option("config", config_path, "config file")->required();
  run_cmd->add_flag("--csv-header", csv_header, "input data CSV has a header row");
  run_cmd->add_flag("--align-columns", align_columns,
                    "sign-align reference columns in the dist metric");
  run_cmd->add_option("--threads", threads, "Eigen thread count");

  auto* bounds_cmd =
      app.add_subcommand("bounds", "print Condition parameter bounds for a config");
  bounds_cmd->add_option("config", config_path, "config file")->required();

  CLI11_PARSE(app, argc, argv);

  thanos::ExperimentConfig cfg;
  try {
    cfg = thanos::parse_config(config_path);
  } catch (const thanos::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  if (run_cmd->parsed()) {
    if (csv_header) cfg.problem.csv_header = true;
    if (align_columns) cfg.align_columns = true;
    Eigen::setNbThreads(threads);
    return thanos::cmd_run(cfg);
  }
  return thanos::cmd_bounds(cfg);
}
