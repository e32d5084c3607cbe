#pragma once

#include <functional>

#include "thanos/manifold.hpp"

namespace thanos {

enum class RegKind { L1, L21, Custom };

// Non-smooth convex term with value, prox, and a Frobenius-norm Lipschitz
// constant. Custom regularizers supply value/prox callbacks; the library
// never differentiates g directly.
struct Regularizer {
  RegKind kind = RegKind::L1;
  double weight = 0.0;  // coefficient on the raw norm, e.g. mu/d per agent
  double lipschitz = 0.0;

  std::function<double(const Matrix&)> custom_value;
  // custom_prox(X, sigma) minimizes g(Y) + ||Y - X||_F^2 / (2 sigma)
  std::function<Matrix(const Matrix&, double)> custom_prox;

  // Lipschitz constants are the exact Frobenius-norm constants of the
  // weighted norms on n x p matrices: w*sqrt(n*p) for l1, w*sqrt(n) for l2,1.
  static Regularizer l1(double weight, int n, int p);
  static Regularizer l21(double weight, int n, int p);
};

double reg_value(const Regularizer& g, const Matrix& X);

// Unique minimizer of g(Y) + ||Y - X||_F^2 / (2 sigma).
// L1: entrywise soft threshold at t = sigma*weight.
// L21: rowwise block soft threshold, zero rows map to zero.
Matrix prox(const Regularizer& g, double sigma, const Matrix& X);

// g(prox(X)) + ||prox(X) - X||_F^2 / (2 sigma)
double env_value(const Regularizer& g, double sigma, const Matrix& X);

// (X - prox(X)) / sigma; Frobenius norm bounded by g.lipschitz.
Matrix env_grad(const Regularizer& g, double sigma, const Matrix& X);

struct SigmaSchedule {
  enum class Mode { Fixed, Power };
  Mode mode = Mode::Fixed;
  double sigma0 = 1.0;
  double exponent = 1.0 / 3.0;

  static SigmaSchedule fixed(double sigma0);
  static SigmaSchedule power(double sigma0, double exponent = 1.0 / 3.0);
};

// Fixed mode: sigma0 for all k. Power mode: sigma0 at k = 0 (the power
// formula is undefined there), k^{-exponent} for k >= 1.
double sigma_at(const SigmaSchedule& s, long k);

}  // namespace thanos
