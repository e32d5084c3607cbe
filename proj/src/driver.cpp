#include <cstdio>
#include <filesystem>
#include <iostream>

#include "thanos/config.hpp"
#include "thanos/errors.hpp"
#include "thanos/metrics.hpp"
#include "thanos/reference.hpp"

namespace thanos {

namespace {

SparsePcaData load_problem_data(const ExperimentConfig& cfg) {
  if (cfg.problem.data == ExperimentConfig::Problem::DataSource::Csv) {
    return load_data_csv(cfg.problem.csv_path, cfg.problem.d, cfg.problem.mu,
                         cfg.problem.csv_header);
  }
  return generate_gaussian_data(cfg.problem.n, cfg.problem.m, cfg.problem.d,
                                cfg.problem.mu, cfg.problem.data_seed);
}

Graph build_graph(const ExperimentConfig& cfg, int d) {
  if (!cfg.graph.edge_list_path.empty()) {
    Graph g = load_edge_list(cfg.graph.edge_list_path);
    if (g.d > d) throw ConfigError("graph.edge_list_path: node index exceeds problem.d");
    g.d = d;
    if (!g.connected())
      throw ConfigError("graph.edge_list_path: loaded graph is not connected");
    return g;
  }
  using Kind = ExperimentConfig::GraphSpec::Kind;
  switch (cfg.graph.kind) {
    case Kind::ErdosRenyi:
      return erdos_renyi(d, cfg.graph.prob, cfg.graph.seed);
    case Kind::Ring:
      return ring(d);
    case Kind::Complete:
      return complete(d);
    case Kind::Star:
      return star(d);
  }
  throw ConfigError("graph.kind: unknown kind");
}

Matrix initial_point(const ExperimentConfig& cfg, const SparsePcaData& data) {
  if (cfg.init.mode == ExperimentConfig::Init::Mode::Random)
    return random_stiefel(static_cast<int>(data.A.rows()), cfg.problem.p,
                          cfg.init.seed)
        .value;
  // Leading p left singular vectors of the global data matrix.
  Eigen::JacobiSVD<Matrix> svd(data.A, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(cfg.problem.p);
}

Matrix obtain_reference(const ExperimentConfig& cfg,
                        const DecentralizedProblem& problem,
                        const Matrix& X_initial) {
  if (!cfg.output.reference_path.empty() &&
      std::filesystem::exists(cfg.output.reference_path)) {
    return load_matrix_csv(cfg.output.reference_path);
  }
  // Seeding the reference from the experiment's own init keeps X* in the
  // same column-sign and column-order frame as the run it is compared to.
  const ReferenceResult res = solve_centralized(
      problem, cfg.reference.sigma_final, cfg.reference.tol,
      cfg.reference.max_iters, &X_initial);
  if (!cfg.output.reference_path.empty())
    save_matrix_csv(res.x_star.value, cfg.output.reference_path);
  return res.x_star.value;
}

}  // namespace

int cmd_run(const ExperimentConfig& cfg) {
  try {
    const SparsePcaData data = load_problem_data(cfg);
    const DecentralizedProblem problem =
        sparse_pca_problem(data, cfg.problem.reg, cfg.problem.p);
    const Graph graph = build_graph(cfg, problem.num_agents());
    if (!cfg.output.graph_path.empty()) save_edge_list(graph, cfg.output.graph_path);
    const MixingMatrix W = metropolis_weights(graph);
    const Matrix X_initial = initial_point(cfg, data);

    Matrix X_star;
    const Matrix* X_star_ptr = nullptr;
    if (!cfg.output.skip_reference) {
      X_star = obtain_reference(cfg, problem, X_initial);
      X_star_ptr = &X_star;
    }

    CsvWriter writer(cfg.output.metrics_path);
    const RunOutcome outcome =
        run(problem, W, cfg.solver, X_initial, X_star_ptr,
            [&writer](const RunRecord& rec) { writer.write(rec); },
            cfg.align_columns);
    std::cerr << "completed " << outcome.iterations << " iterations; metrics in "
              << cfg.output.metrics_path << "\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return 3;
  } catch (const DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return 4;
  }
}

int cmd_bounds(const ExperimentConfig& cfg) {
  try {
    const SparsePcaData data = load_problem_data(cfg);
    const DecentralizedProblem problem =
        sparse_pca_problem(data, cfg.problem.reg, cfg.problem.p);
    const MixingMatrix W = metropolis_weights(build_graph(cfg, problem.num_agents()));

    const double sigma = sigma_at(cfg.solver.sigma_schedule, 0);
    const ParameterBounds b = condition1_bounds(problem, sigma, W);
    std::printf("lambda      = %.17g\n", W.lambda);
    std::printf("M_f         = %.17g\n", b.m_f);
    std::printf("M_g         = %.17g\n", b.m_g);
    std::printf("L_r         = %.17g\n", b.l_r);
    std::printf("beta_lower  = %.17g\n", b.beta_lower);
    std::printf("eta_upper   = %.17g\n", b.eta_upper);

    const bool beta_ok = cfg.solver.beta > b.beta_lower;
    std::printf("configured beta %.17g %s the Condition bound\n", cfg.solver.beta,
                beta_ok ? "satisfies" : "violates");
    if (cfg.solver.step_mode == SolverConfig::StepMode::Fixed) {
      const bool eta_ok = cfg.solver.eta < b.eta_upper && cfg.solver.eta > 0.0;
      std::printf("configured eta %.17g %s the Condition bound\n", cfg.solver.eta,
                  eta_ok ? "satisfies" : "violates");
    } else {
      std::printf("stepsize mode bb: safeguarded interval [%.17g, %.17g] is not "
                  "covered by the worst-case bound\n",
                  cfg.solver.eta_min, cfg.solver.eta_max);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace thanos
