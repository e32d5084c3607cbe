#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thanos/errors.hpp"
#include "thanos/metrics.hpp"
#include "thanos/reference.hpp"

namespace py = pybind11;
using namespace thanos;

namespace {

Regularizer make_reg(const std::string& kind, double weight, int n, int p) {
  if (kind == "l1") return Regularizer::l1(weight, n, p);
  if (kind == "l21") return Regularizer::l21(weight, n, p);
  throw std::invalid_argument("regularizer kind must be 'l1' or 'l21'");
}

RegKind parse_kind(const std::string& kind) {
  if (kind == "l1") return RegKind::L1;
  if (kind == "l21") return RegKind::L21;
  throw std::invalid_argument("regularizer kind must be 'l1' or 'l21'");
}

SigmaSchedule make_schedule(const std::string& mode, double sigma0) {
  if (mode == "fixed") return SigmaSchedule::fixed(sigma0);
  if (mode == "power") return SigmaSchedule::power(sigma0);
  throw std::invalid_argument("sigma mode must be 'fixed' or 'power'");
}

}  // namespace

PYBIND11_MODULE(_thanos, m) {
  m.doc() = "decentralized nonsmooth optimization over the Stiefel manifold";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<IngestionError>(m, "IngestionError");
  py::register_exception<DivergenceError>(m, "DivergenceError");

  m.def("retract", [](const Matrix& X) { return retract(X).value; },
        py::arg("x"));
  m.def("feasibility", &feasibility, py::arg("x"));
  m.def("proj_tangent", &proj_tangent, py::arg("x"), py::arg("g"));
  m.def("random_stiefel",
        [](int n, int p, std::uint64_t seed) {
          return random_stiefel(n, p, seed).value;
        },
        py::arg("n"), py::arg("p"), py::arg("seed"));

  m.def("prox",
        [](const std::string& kind, double weight, double sigma, const Matrix& X) {
          return prox(make_reg(kind, weight, static_cast<int>(X.rows()),
                               static_cast<int>(X.cols())),
                      sigma, X);
        },
        py::arg("kind"), py::arg("weight"), py::arg("sigma"), py::arg("x"));
  m.def("env_value",
        [](const std::string& kind, double weight, double sigma, const Matrix& X) {
          return env_value(make_reg(kind, weight, static_cast<int>(X.rows()),
                                    static_cast<int>(X.cols())),
                           sigma, X);
        },
        py::arg("kind"), py::arg("weight"), py::arg("sigma"), py::arg("x"));
  m.def("env_grad",
        [](const std::string& kind, double weight, double sigma, const Matrix& X) {
          return env_grad(make_reg(kind, weight, static_cast<int>(X.rows()),
                                   static_cast<int>(X.cols())),
                          sigma, X);
        },
        py::arg("kind"), py::arg("weight"), py::arg("sigma"), py::arg("x"));

  py::class_<MixingMatrix>(m, "MixingMatrix")
      .def_readonly("W", &MixingMatrix::W)
      .def_readonly("lam", &MixingMatrix::lambda);

  m.def("metropolis_weights",
        [](const std::string& kind, int d, double prob, std::uint64_t seed) {
          Graph g;
          if (kind == "er")
            g = erdos_renyi(d, prob, seed);
          else if (kind == "ring")
            g = ring(d);
          else if (kind == "complete")
            g = complete(d);
          else if (kind == "star")
            g = star(d);
          else
            throw std::invalid_argument("graph kind must be er, ring, complete or star");
          return metropolis_weights(g);
        },
        py::arg("kind"), py::arg("d"), py::arg("prob") = 0.5, py::arg("seed") = 0);

  py::class_<SparsePcaData>(m, "SparsePcaData")
      .def_readonly("A", &SparsePcaData::A)
      .def_readonly("partitions", &SparsePcaData::partitions)
      .def_readonly("mu", &SparsePcaData::mu);

  m.def("generate_data", &generate_gaussian_data, py::arg("n"), py::arg("m"),
        py::arg("d"), py::arg("mu"), py::arg("seed"));
  m.def("load_data_csv", &load_data_csv, py::arg("path"), py::arg("d"),
        py::arg("mu"), py::arg("skip_header") = false);

  py::class_<DecentralizedProblem>(m, "Problem")
      .def_readonly("n", &DecentralizedProblem::n)
      .def_readonly("p", &DecentralizedProblem::p)
      .def_readonly("lipschitz_f", &DecentralizedProblem::lipschitz_f)
      .def_readonly("lipschitz_g", &DecentralizedProblem::lipschitz_g)
      .def_property_readonly("d", &DecentralizedProblem::num_agents);

  m.def("sparse_pca_problem",
        [](const SparsePcaData& data, const std::string& kind, int p) {
          return sparse_pca_problem(data, parse_kind(kind), p);
        },
        py::arg("data"), py::arg("kind"), py::arg("p"));

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("k", &RunRecord::k)
      .def_readonly("dist", &RunRecord::dist)
      .def_readonly("feas", &RunRecord::feas)
      .def_readonly("consensus", &RunRecord::consensus)
      .def_readonly("stat_residual", &RunRecord::stat_residual)
      .def_readonly("sigma", &RunRecord::sigma)
      .def_readonly("eta", &RunRecord::eta);

  py::class_<RunOutcome>(m, "RunOutcome")
      .def_readonly("records", &RunOutcome::records)
      .def_readonly("iterations", &RunOutcome::iterations)
      .def_property_readonly("iterates", [](const RunOutcome& o) {
        std::vector<Matrix> xs;
        for (const auto& s : o.states) xs.push_back(s.X);
        return xs;
      });

  m.def("run",
        [](const DecentralizedProblem& problem, const MixingMatrix& W,
           const Matrix& X_initial, const std::string& step, double eta,
           double beta, const std::string& sigma_mode, double sigma0,
           long max_iters, double stop_tol, const std::optional<Matrix>& X_star,
           bool align_columns) {
          SolverConfig cfg;
          cfg.step_mode = step == "bb" ? SolverConfig::StepMode::BB
                                       : SolverConfig::StepMode::Fixed;
          cfg.eta = eta;
          cfg.beta = beta;
          cfg.sigma_schedule = make_schedule(sigma_mode, sigma0);
          cfg.max_iters = max_iters;
          cfg.stop_tol = stop_tol;
          return run(problem, W, cfg, X_initial, X_star ? &*X_star : nullptr, {},
                     align_columns);
        },
        py::arg("problem"), py::arg("W"), py::arg("x_initial"),
        py::arg("step") = "bb", py::arg("eta") = 1e-2, py::arg("beta") = 1.0,
        py::arg("sigma_mode") = "power", py::arg("sigma0") = 1.0,
        py::arg("max_iters") = 1000, py::arg("stop_tol") = 0.0,
        py::arg("x_star") = std::nullopt, py::arg("align_columns") = false);

  py::class_<ReferenceResult>(m, "ReferenceResult")
      .def_property_readonly("x_star",
                             [](const ReferenceResult& r) { return r.x_star.value; })
      .def_readonly("final_objective", &ReferenceResult::final_objective)
      .def_readonly("iterations_used", &ReferenceResult::iterations_used)
      .def_readonly("residual", &ReferenceResult::residual);

  m.def("solve_centralized",
        [](const DecentralizedProblem& problem, double sigma_final, double tol,
           long max_iters, const std::optional<Matrix>& x_init) {
          return solve_centralized(problem, sigma_final, tol, max_iters,
                                   x_init ? &*x_init : nullptr);
        },
        py::arg("problem"), py::arg("sigma_final") = 1e-3, py::arg("tol") = 1e-6,
        py::arg("max_iters") = 100000, py::arg("x_init") = std::nullopt);

  py::class_<StationarityCertificate>(m, "StationarityCertificate")
      .def_readonly("epsilon", &StationarityCertificate::epsilon)
      .def_readonly("grad_residual", &StationarityCertificate::grad_residual)
      .def_readonly("max_prox_gap", &StationarityCertificate::max_prox_gap)
      .def_readonly("feas", &StationarityCertificate::feas)
      .def_readonly("passed", &StationarityCertificate::passed)
      .def_readonly("sigma_premise", &StationarityCertificate::sigma_premise);

  m.def("check_epsilon_stationary", &check_epsilon_stationary, py::arg("x"),
        py::arg("problem"), py::arg("sigma"), py::arg("epsilon"));
}
