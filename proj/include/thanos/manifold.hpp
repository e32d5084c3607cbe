#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace thanos {

using Matrix = Eigen::MatrixXd;

// An n x p matrix with (approximately) orthonormal columns.
// Iterates of the decentralized loop are plain Matrix values and are
// allowed to drift off the manifold; StiefelPoint is only produced by
// retract() and random_stiefel(), which guarantee the tolerance below.
struct StiefelPoint {
  Matrix value;
  double feasibility_tol = 1e-12;

  int rows() const { return static_cast<int>(value.rows()); }
  int cols() const { return static_cast<int>(value.cols()); }
};

// sym(B) = (B + B^T) / 2. Throws std::invalid_argument for non-square B.
Matrix sym(const Matrix& B);

// proj_X(Y) = Y - X sym(X^T Y). For feasible X this is the orthogonal
// projection onto the tangent space at X.
Matrix proj_tangent(const Matrix& X, const Matrix& Y);

// ||X^T X - I_p||_F
double feasibility(const Matrix& X);

// Nearest orthonormal matrix U V^T from the thin SVD X = U S V^T.
// Throws std::runtime_error when X is (numerically) rank deficient.
StiefelPoint retract(const Matrix& X);

// Orthonormal factor of a seeded Gaussian n x p matrix. Deterministic per
// seed; no global RNG state.
StiefelPoint random_stiefel(int n, int p, std::uint64_t seed);

// Seeded i.i.d. standard Gaussian matrix (shared by data generation and
// test helpers).
Matrix random_gaussian(int rows, int cols, std::uint64_t seed);

}  // namespace thanos
