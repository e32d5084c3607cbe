#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thanos/manifold.hpp"
#include "thanos/smoothing.hpp"

namespace thanos {

// Smooth local term: value, Euclidean gradient, and a Lipschitz constant
// for the gradient. linear_gradient marks gradients of the form -M X with
// ||M||_2 = lipschitz, which makes sup ||grad f(X)|| over a norm ball exact.
struct LocalSmooth {
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> grad;
  double lipschitz = 0.0;
  bool linear_gradient = false;
};

struct Agent {
  LocalSmooth smooth;
  Regularizer reg;
};

struct DecentralizedProblem {
  std::vector<Agent> agents;
  int n = 0;
  int p = 0;
  double lipschitz_f = 0.0;  // max over agents
  double lipschitz_g = 0.0;  // max over agents

  int num_agents() const { return static_cast<int>(agents.size()); }
};

// Global data matrix A with an ordered, disjoint column partition across
// agents. Partitions are [begin, end) column ranges.
struct SparsePcaData {
  Matrix A;
  std::vector<std::pair<int, int>> partitions;
  double mu = 0.0;
};

// Per-agent f_i(X) = -tr(X^T A_i A_i^T X)/2, grad -A_i A_i^T X,
// L_{f_i} = ||A_i A_i^T||_2; regularizer weight mu/d.
DecentralizedProblem sparse_pca_problem(const SparsePcaData& data,
                                        RegKind reg_kind, int p);

// Seeded Gaussian data; columns split near-equally, leading agents take
// one extra column when d does not divide m.
SparsePcaData generate_gaussian_data(int n, int m, int d, double mu,
                                     std::uint64_t seed);

// Rectangular numeric CSV, rows = features, cols = samples. Errors carry
// 1-based row/col locations.
SparsePcaData load_data_csv(const std::string& path, int d, double mu,
                            bool skip_header = false);

// Largest eigenvalue of the PSD matrix M by power iteration.
double spectral_norm_psd(const Matrix& M, double tol = 1e-10,
                         int max_iters = 10000);

// Column partition helper shared by the generators.
std::vector<std::pair<int, int>> partition_columns(int m, int d);

// Matrix CSV persistence (used for the reference solution X*).
void save_matrix_csv(const Matrix& X, const std::string& path);
Matrix load_matrix_csv(const std::string& path);

}  // namespace thanos
