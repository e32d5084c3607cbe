#include "thanos/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "thanos/tracker.hpp"

namespace thanos {

namespace {

// Collapse the d local terms into a single agent. Regularizers must share
// one kind so that the aggregate prox stays in closed form.
Agent aggregate_agent(const DecentralizedProblem& problem) {
  if (problem.agents.empty())
    throw std::invalid_argument("solve_centralized: empty problem");
  if (problem.num_agents() == 1) return problem.agents.front();

  const RegKind kind = problem.agents.front().reg.kind;
  double weight = 0.0;
  double lip_f = 0.0;
  for (const auto& a : problem.agents) {
    if (a.reg.kind != kind || kind == RegKind::Custom)
      throw std::invalid_argument(
          "solve_centralized: agents must share a closed-form regularizer kind");
    weight += a.reg.weight;
    lip_f += a.smooth.lipschitz;
  }

  Agent agg;
  std::vector<Agent> agents = problem.agents;
  agg.smooth.value = [agents](const Matrix& X) {
    double v = 0.0;
    for (const auto& a : agents) v += a.smooth.value(X);
    return v;
  };
  agg.smooth.grad = [agents](const Matrix& X) -> Matrix {
    Matrix G = agents.front().smooth.grad(X);
    for (std::size_t i = 1; i < agents.size(); ++i) G += agents[i].smooth.grad(X);
    return G;
  };
  agg.smooth.lipschitz = lip_f;
  agg.reg = kind == RegKind::L1 ? Regularizer::l1(weight, problem.n, problem.p)
                                : Regularizer::l21(weight, problem.n, problem.p);
  return agg;
}

}  // namespace

ReferenceResult solve_centralized(const DecentralizedProblem& problem,
                                  double sigma_final, double tol,
                                  long max_iters, const Matrix* X_init) {
  if (!(tol > 0.0))
    throw std::invalid_argument("solve_centralized: tol must be positive");
  if (!(sigma_final > 0.0))
    throw std::invalid_argument("solve_centralized: sigma_final must be positive");

  const Agent agent = aggregate_agent(problem);
  const double beta = 1.0;
  const double eta_min = 1e-8;
  const double eta_max = 1.0;

  Matrix X = X_init ? retract(*X_init).value
                    : random_stiefel(problem.n, problem.p, 0).value;
  if (X_init && (X.rows() != problem.n || X.cols() != problem.p))
    throw std::invalid_argument("solve_centralized: X_init has the wrong shape");

  auto sigma_of = [&](long k) {
    return std::max(sigma_final, std::pow(0.5, static_cast<double>(k / 2000)));
  };

  Matrix X_prev = X, H_prev;
  double eta = 0.01 / (agent.smooth.lipschitz + 1.0 / sigma_of(0) + 1.0);

  ReferenceResult best;
  best.residual = std::numeric_limits<double>::infinity();

  Matrix H = descent_direction(agent, X, sigma_of(0), beta);
  H_prev = H;

  long k = 0;
  for (; k < max_iters; ++k) {
    const double sigma = sigma_of(k);
    if (k >= 1) {
      eta = bb_stepsize(k, X_prev, X, H_prev, H, eta, eta_min, eta_max);
    }
    X_prev = X;
    H_prev = H;
    X -= eta * H;
    if (!X.allFinite())
      throw std::runtime_error("solve_centralized: diverged at iteration " +
                               std::to_string(k));
    const double sigma_next = sigma_of(k + 1);
    H = descent_direction(agent, X, sigma_next, beta);

    const StiefelPoint Xr = retract(X);
    const Matrix G = local_gradient(agent, Xr.value, sigma_next);
    const double resid = proj_tangent(Xr.value, G).norm();
    if (sigma_next <= sigma_final && resid < best.residual) {
      best.x_star = Xr;
      best.residual = resid;
      best.iterations_used = k + 1;
      if (resid <= tol) {
        ++k;
        break;
      }
    }
    (void)sigma;
  }

  if (!std::isfinite(best.residual)) {
    // sigma never reached sigma_final within the budget; report the current
    // retracted iterate.
    best.x_star = retract(X);
    best.residual =
        proj_tangent(best.x_star.value, local_gradient(agent, best.x_star.value, sigma_final))
            .norm();
    best.iterations_used = k;
  }

  best.final_objective = 0.0;
  for (const auto& a : problem.agents)
    best.final_objective +=
        a.smooth.value(best.x_star.value) + reg_value(a.reg, best.x_star.value);
  return best;
}

Matrix brute_force_prox(const Regularizer& g, double sigma, const Matrix& X,
                        double grid_radius, int grid_steps) {
  const int entries = static_cast<int>(X.size());
  if (entries > 4)
    throw std::invalid_argument("brute_force_prox: too many entries for the grid oracle");
  if (grid_steps < 2)
    throw std::invalid_argument("brute_force_prox: need at least 2 grid points");

  Matrix best = X;
  double best_val = std::numeric_limits<double>::infinity();
  Matrix Y = X;
  std::vector<int> idx(entries, 0);
  const double step = 2.0 * grid_radius / (grid_steps - 1);

  while (true) {
    for (int e = 0; e < entries; ++e)
      Y(e) = X(e) - grid_radius + idx[e] * step;
    const double val = reg_value(g, Y) + (Y - X).squaredNorm() / (2.0 * sigma);
    if (val < best_val) {
      best_val = val;
      best = Y;
    }
    int e = 0;
    for (; e < entries; ++e) {
      if (++idx[e] < grid_steps) break;
      idx[e] = 0;
    }
    if (e == entries) break;
  }
  return best;
}

}  // namespace thanos
