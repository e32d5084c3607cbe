#include "thanos/manifold.hpp"

#include <random>
#include <stdexcept>

namespace thanos {

Matrix sym(const Matrix& B) {
  if (B.rows() != B.cols())
    throw std::invalid_argument("sym: matrix must be square");
  return 0.5 * (B + B.transpose());
}

Matrix proj_tangent(const Matrix& X, const Matrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols())
    throw std::invalid_argument("proj_tangent: shape mismatch");
  return Y - X * sym(X.transpose() * Y);
}

double feasibility(const Matrix& X) {
  const auto p = X.cols();
  return (X.transpose() * X - Matrix::Identity(p, p)).norm();
}

StiefelPoint retract(const Matrix& X) {
  if (X.rows() < X.cols())
    throw std::invalid_argument("retract: need rows >= cols");
  Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) <= 1e-14 * std::max(1.0, s(0)))
    throw std::runtime_error("retract: rank-deficient input");
  return StiefelPoint{svd.matrixU() * svd.matrixV().transpose()};
}

Matrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A(i, j) = gauss(rng);
  return A;
}

StiefelPoint random_stiefel(int n, int p, std::uint64_t seed) {
  if (p > n || p < 1)
    throw std::invalid_argument("random_stiefel: need n >= p >= 1");
  return retract(random_gaussian(n, p, seed));
}

}  // namespace thanos
