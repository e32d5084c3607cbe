#pragma once

#include "thanos/problem.hpp"

namespace thanos {

struct ReferenceResult {
  StiefelPoint x_star;
  double final_objective = 0.0;
  long iterations_used = 0;
  double residual = 0.0;  // ||proj_X(G(X))||_F at the returned point
};

// Centralized high-precision solve: runs the collapsed d=1 dynamics on the
// aggregated problem with BB steps and a halving sigma schedule down to
// sigma_final, until the tangent gradient residual at the retracted iterate
// drops below tol. Hitting max_iters returns the best iterate with its
// residual; it is not an error. X_init, when given, is retracted and used as
// the starting point (pass the experiment's own init so X* lands in the same
// column-sign and column-order frame); otherwise a seeded random point.
ReferenceResult solve_centralized(const DecentralizedProblem& problem,
                                  double sigma_final, double tol,
                                  long max_iters, const Matrix* X_init = nullptr);

// Grid minimizer of g(Y) + ||Y - X||_F^2 / (2 sigma) over an entrywise grid
// of grid_steps points in [x_ij - grid_radius, x_ij + grid_radius]. Test
// oracle; refuses inputs with more than 4 entries.
Matrix brute_force_prox(const Regularizer& g, double sigma, const Matrix& X,
                        double grid_radius, int grid_steps);

}  // namespace thanos
