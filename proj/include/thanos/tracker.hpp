#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "thanos/network.hpp"
#include "thanos/problem.hpp"

namespace thanos {

// Per-agent decentralized state: local iterate X, gradient tracker D, and
// the local descent direction H from the previous evaluation.
struct AgentState {
  Matrix X;
  Matrix D;
  Matrix H;
  int agent_id = 0;
};

struct SolverConfig {
  enum class StepMode { Fixed, BB };
  StepMode step_mode = StepMode::Fixed;
  double eta = 1e-2;    // used in Fixed mode
  double beta = 1.0;    // orthogonality penalty
  SigmaSchedule sigma_schedule = SigmaSchedule::fixed(0.1);
  long max_iters = 1000;
  double stop_tol = 0.0;  // on the averaged-iterate stationarity residual
  double eta_min = 1e-6;  // BB safeguard interval
  double eta_max = 1.0;
};

struct ParameterBounds {
  double m_f = 0.0;      // sup of ||grad f_i|| over the Condition ball
  double m_g = 0.0;
  double l_r = 0.0;
  double beta_lower = 0.0;
  double eta_upper = 0.0;
};

// grad f_i(X) + grad env_{sigma, g_i}(X)
Matrix local_gradient(const Agent& agent, const Matrix& X, double sigma);

// H = beta X (X^T X - I) + R_i(X) with
// R_i(X) = G_i(X)(3I - X^T X)/2 - X sym(X^T G_i(X)).
Matrix descent_direction(const Agent& agent, const Matrix& X, double sigma,
                         double beta);

// Correction-only part R_i(X) for a precomputed gradient G.
Matrix correction_direction(const Matrix& X, const Matrix& G);

// Alternating safeguarded BB stepsize from local secant pairs
// S = X_curr - X_prev, V = H_curr - H_prev. Odd k uses BB1 |<S,S>/<S,V>|,
// even k uses BB2 |<S,V>/<V,V>|; near-zero denominators fall back to the
// previous stepsize, the result is clamped to [eta_min, eta_max].
double bb_stepsize(long k, const Matrix& X_prev, const Matrix& X_curr,
                   const Matrix& H_prev, const Matrix& H_curr,
                   double prev_eta, double eta_min, double eta_max);

// Algorithm init: every agent starts from the same X_initial with
// D = H = descent_direction at sigma(0).
std::vector<AgentState> init_states(const DecentralizedProblem& problem,
                                    const Matrix& X_initial,
                                    const SolverConfig& config);

// One synchronous round: consensus descent on X, recompute H at
// sigma(k+1), gradient-tracking update of D. etas[i] is the stepsize
// agent i applies to its own broadcast payload X_i - eta_i D_i.
std::vector<AgentState> step(const std::vector<AgentState>& states,
                             const MixingMatrix& W,
                             const DecentralizedProblem& problem,
                             const SolverConfig& config, long k,
                             const std::vector<double>& etas);

// Condition bounds for the configured instance. m_f uses the exact bound
// L_f * radius when every agent has a linear gradient, otherwise a seeded
// 1000-sample estimate over the ball of radius sqrt(7dp/6) + sqrt(d).
ParameterBounds condition1_bounds(const DecentralizedProblem& problem,
                                  double sigma, const MixingMatrix& W);

struct RunRecord {
  long k = 0;
  std::optional<double> dist;  // only when a reference X* is supplied
  double feas = 0.0;
  double consensus = 0.0;
  double stat_residual = 0.0;
  double sigma = 0.0;
  double eta = 0.0;
};

struct RunOutcome {
  std::vector<AgentState> states;
  std::vector<RunRecord> records;
  long iterations = 0;
};

// Full synchronous loop; one record per completed iteration. on_record,
// when set, sees each record as soon as it is produced (incremental CSV).
// align_columns applies per-column sign alignment of X* in the dist metric.
RunOutcome run(const DecentralizedProblem& problem, const MixingMatrix& W,
               const SolverConfig& config, const Matrix& X_initial,
               const Matrix* X_star = nullptr,
               const std::function<void(const RunRecord&)>& on_record = {},
               bool align_columns = false);

}  // namespace thanos
