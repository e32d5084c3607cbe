#include "thanos/smoothing.hpp"

#include <cmath>
#include <stdexcept>

namespace thanos {

Regularizer Regularizer::l1(double weight, int n, int p) {
  Regularizer g;
  g.kind = RegKind::L1;
  g.weight = weight;
  g.lipschitz = weight * std::sqrt(static_cast<double>(n) * p);
  return g;
}

Regularizer Regularizer::l21(double weight, int n, int p) {
  (void)p;
  Regularizer g;
  g.kind = RegKind::L21;
  g.weight = weight;
  g.lipschitz = weight * std::sqrt(static_cast<double>(n));
  return g;
}

double reg_value(const Regularizer& g, const Matrix& X) {
  switch (g.kind) {
    case RegKind::L1:
      return g.weight * X.array().abs().sum();
    case RegKind::L21:
      return g.weight * X.rowwise().norm().sum();
    case RegKind::Custom:
      return g.custom_value(X);
  }
  throw std::logic_error("reg_value: unknown kind");
}

static void require_positive_sigma(double sigma) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("smoothing: sigma must be positive");
}

Matrix prox(const Regularizer& g, double sigma, const Matrix& X) {
  require_positive_sigma(sigma);
  const double t = sigma * g.weight;
  switch (g.kind) {
    case RegKind::L1:
      return X.unaryExpr([t](double x) {
        const double m = std::abs(x) - t;
        return m > 0.0 ? (x > 0.0 ? m : -m) : 0.0;
      });
    case RegKind::L21: {
      Matrix Y = X;
      for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double nrm = X.row(i).norm();
        Y.row(i) *= nrm > t ? 1.0 - t / nrm : 0.0;
      }
      return Y;
    }
    case RegKind::Custom:
      return g.custom_prox(X, sigma);
  }
  throw std::logic_error("prox: unknown kind");
}

double env_value(const Regularizer& g, double sigma, const Matrix& X) {
  require_positive_sigma(sigma);
  const Matrix Y = prox(g, sigma, X);
  return reg_value(g, Y) + (Y - X).squaredNorm() / (2.0 * sigma);
}

Matrix env_grad(const Regularizer& g, double sigma, const Matrix& X) {
  require_positive_sigma(sigma);
  return (X - prox(g, sigma, X)) / sigma;
}

SigmaSchedule SigmaSchedule::fixed(double sigma0) {
  return SigmaSchedule{Mode::Fixed, sigma0, 1.0 / 3.0};
}

SigmaSchedule SigmaSchedule::power(double sigma0, double exponent) {
  return SigmaSchedule{Mode::Power, sigma0, exponent};
}

double sigma_at(const SigmaSchedule& s, long k) {
  if (s.mode == SigmaSchedule::Mode::Fixed) return s.sigma0;
  if (k <= 0) return s.sigma0;
  return std::pow(static_cast<double>(k), -s.exponent);
}

}  // namespace thanos
