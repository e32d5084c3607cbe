#include "thanos/tracker.hpp"

#include <cmath>
#include <stdexcept>

#include "thanos/errors.hpp"
#include "thanos/metrics.hpp"

namespace thanos {

Matrix local_gradient(const Agent& agent, const Matrix& X, double sigma) {
  return agent.smooth.grad(X) + env_grad(agent.reg, sigma, X);
}

Matrix correction_direction(const Matrix& X, const Matrix& G) {
  const auto p = X.cols();
  const Matrix gram = X.transpose() * X;
  return 0.5 * G * (3.0 * Matrix::Identity(p, p) - gram) -
         X * sym(X.transpose() * G);
}

Matrix descent_direction(const Agent& agent, const Matrix& X, double sigma,
                         double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("descent_direction: beta must be positive");
  const auto p = X.cols();
  const Matrix G = local_gradient(agent, X, sigma);
  return beta * X * (X.transpose() * X - Matrix::Identity(p, p)) +
         correction_direction(X, G);
}

double bb_stepsize(long k, const Matrix& X_prev, const Matrix& X_curr,
                   const Matrix& H_prev, const Matrix& H_curr,
                   double prev_eta, double eta_min, double eta_max) {
  const Matrix S = X_curr - X_prev;
  const Matrix V = H_curr - H_prev;
  const double sv = (S.array() * V.array()).sum();
  double eta;
  if (k % 2 == 1) {
    const double ss = S.squaredNorm();
    if (std::abs(sv) < 1e-18) return prev_eta;
    eta = std::abs(ss / sv);
  } else {
    const double vv = V.squaredNorm();
    if (vv < 1e-18) return prev_eta;
    eta = std::abs(sv / vv);
  }
  return std::clamp(eta, eta_min, eta_max);
}

std::vector<AgentState> init_states(const DecentralizedProblem& problem,
                                    const Matrix& X_initial,
                                    const SolverConfig& config) {
  const double sigma0 = sigma_at(config.sigma_schedule, 0);
  std::vector<AgentState> states;
  states.reserve(problem.agents.size());
  for (int i = 0; i < problem.num_agents(); ++i) {
    AgentState s;
    s.agent_id = i;
    s.X = X_initial;
    s.H = descent_direction(problem.agents[i], X_initial, sigma0, config.beta);
    s.D = s.H;
    states.push_back(std::move(s));
  }
  return states;
}

std::vector<AgentState> step(const std::vector<AgentState>& states,
                             const MixingMatrix& W,
                             const DecentralizedProblem& problem,
                             const SolverConfig& config, long k,
                             const std::vector<double>& etas) {
  const int d = problem.num_agents();
  if (static_cast<int>(states.size()) != d || W.d() != d ||
      static_cast<int>(etas.size()) != d)
    throw std::invalid_argument("step: agent count mismatch");

  // Broadcast payloads X_i - eta_i D_i, then one consensus round.
  std::vector<Matrix> payloads(d);
  for (int i = 0; i < d; ++i) payloads[i] = states[i].X - etas[i] * states[i].D;
  std::vector<Matrix> X_next = mix(W, payloads);

  std::vector<Matrix> trackers(d);
  for (int i = 0; i < d; ++i) trackers[i] = states[i].D;
  std::vector<Matrix> D_mixed = mix(W, trackers);

  const double sigma_next = sigma_at(config.sigma_schedule, k + 1);
  std::vector<AgentState> next(d);
  for (int i = 0; i < d; ++i) {
    if (!X_next[i].allFinite())
      throw DivergenceError("non-finite iterate at iteration " +
                                std::to_string(k + 1) + ", agent " +
                                std::to_string(i),
                            k + 1, i);
    next[i].agent_id = i;
    next[i].X = std::move(X_next[i]);
    next[i].H =
        descent_direction(problem.agents[i], next[i].X, sigma_next, config.beta);
    next[i].D = D_mixed[i] + next[i].H - states[i].H;
  }
  return next;
}

ParameterBounds condition1_bounds(const DecentralizedProblem& problem,
                                  double sigma, const MixingMatrix& W) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("condition1_bounds: sigma must be positive");
  const int d = problem.num_agents();
  const double n_p = static_cast<double>(problem.n) * problem.p;
  const double dp = static_cast<double>(d) * problem.p;
  const double radius = std::sqrt(7.0 * dp / 6.0) + std::sqrt(static_cast<double>(d));

  ParameterBounds b;
  bool all_linear = true;
  for (const auto& a : problem.agents) all_linear &= a.smooth.linear_gradient;
  if (all_linear) {
    // sup over the ball is exact for gradients of the form -M X.
    b.m_f = problem.lipschitz_f * radius;
  } else {
    (void)n_p;
    double best = 0.0;
    for (int s = 0; s < 1000; ++s) {
      Matrix X = random_gaussian(problem.n, problem.p,
                                 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(s));
      const double nrm = X.norm();
      if (nrm > 0.0) {
        const double scale = radius * ((s % 997) + 1) / 997.0;
        X *= scale / nrm;
      }
      for (const auto& a : problem.agents)
        best = std::max(best, a.smooth.grad(X).norm());
    }
    b.m_f = best;
  }

  const double lf = problem.lipschitz_f;
  const double lg = problem.lipschitz_g;
  b.m_g = 3.0 * (b.m_f + lg) * (7.0 * dp + 6.0 * d + 3.0) / 6.0;
  b.l_r = 7.0 * dp * (lf + 1.0 / sigma) + 6.0 * d + 3.0;

  const double inv = lf + 1.0 / sigma;
  b.beta_lower = std::max({(6.0 + 21.0 * (b.m_f + lg)) / 5.0,
                           72.0 * (4.0 + 3.0 * b.m_g) / 5.0,
                           1.0 / (7.0 * dp + 6.0 * d), 22.0 * inv * inv});
  const double denom = b.l_r + (7.0 * dp + 6.0 * d) * b.beta_lower;
  b.eta_upper = d * (1.0 - W.lambda * W.lambda) / (48.0 * denom * denom);
  return b;
}

RunOutcome run(const DecentralizedProblem& problem, const MixingMatrix& W,
               const SolverConfig& config, const Matrix& X_initial,
               const Matrix* X_star,
               const std::function<void(const RunRecord&)>& on_record,
               bool align_columns) {
  if (problem.num_agents() != W.d())
    throw std::invalid_argument("run: problem and W disagree on agent count");
  if (config.max_iters < 0)
    throw std::invalid_argument("run: max_iters must be >= 0");
  if (config.eta_min > config.eta_max)
    throw std::invalid_argument("run: eta_min > eta_max");

  const int d = problem.num_agents();
  RunOutcome out;
  out.states = init_states(problem, X_initial, config);

  std::vector<double> etas(d, config.step_mode == SolverConfig::StepMode::BB
                                  ? config.eta_min
                                  : config.eta);
  std::vector<AgentState> prev;

  for (long k = 0; k < config.max_iters; ++k) {
    if (config.step_mode == SolverConfig::StepMode::BB && k >= 1) {
      for (int i = 0; i < d; ++i)
        etas[i] = bb_stepsize(k, prev[i].X, out.states[i].X, prev[i].H,
                              out.states[i].H, etas[i], config.eta_min,
                              config.eta_max);
    }
    std::vector<AgentState> next = step(out.states, W, problem, config, k, etas);
    prev = std::move(out.states);
    out.states = std::move(next);
    ++out.iterations;

    // Mean stepsize in the record; with Fixed mode this is config.eta.
    double eta_mean = 0.0;
    for (double e : etas) eta_mean += e;
    eta_mean /= d;

    const double sigma_now = sigma_at(config.sigma_schedule, k + 1);
    RunRecord rec = record(out.states, problem, sigma_now, eta_mean, k + 1,
                           X_star, align_columns);
    if (on_record) on_record(rec);
    out.records.push_back(rec);

    if (config.stop_tol > 0.0 && rec.stat_residual <= config.stop_tol) break;
  }
  return out;
}

}  // namespace thanos
