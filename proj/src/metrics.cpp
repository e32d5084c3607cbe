#include "thanos/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "thanos/errors.hpp"

namespace thanos {

static Matrix aligned_reference(const Matrix& X_star, const Matrix& X_bar) {
  Matrix R = X_star;
  for (Eigen::Index j = 0; j < R.cols(); ++j)
    if (X_bar.col(j).dot(R.col(j)) < 0.0) R.col(j) *= -1.0;
  return R;
}

RunRecord record(const std::vector<AgentState>& states,
                 const DecentralizedProblem& problem, double sigma, double eta,
                 long k, const Matrix* X_star, bool align_columns) {
  if (states.empty()) throw std::invalid_argument("record: no states");
  const int d = static_cast<int>(states.size());

  Matrix X_bar = Matrix::Zero(states[0].X.rows(), states[0].X.cols());
  for (const auto& s : states) X_bar += s.X;
  X_bar /= d;

  RunRecord rec;
  rec.k = k;
  rec.sigma = sigma;
  rec.eta = eta;
  for (const auto& s : states) {
    rec.feas += feasibility(s.X);
    rec.consensus += (s.X - X_bar).norm();
  }
  rec.feas /= d;
  rec.consensus /= d;

  if (X_star) {
    const Matrix ref = align_columns ? aligned_reference(*X_star, X_bar) : *X_star;
    double acc = 0.0;
    for (const auto& s : states) acc += (s.X - ref).norm();
    rec.dist = acc / d;
  }

  Matrix G = Matrix::Zero(X_bar.rows(), X_bar.cols());
  for (const auto& a : problem.agents) G += local_gradient(a, X_bar, sigma);
  rec.stat_residual = proj_tangent(X_bar, G).norm();
  return rec;
}

StationarityCertificate check_epsilon_stationary(const Matrix& X,
                                                 const DecentralizedProblem& problem,
                                                 double sigma, double epsilon) {
  if (!(sigma > 0.0) || !(epsilon > 0.0))
    throw std::invalid_argument("check_epsilon_stationary: sigma and epsilon must be positive");

  StationarityCertificate cert;
  cert.epsilon = epsilon;

  Matrix G = Matrix::Zero(X.rows(), X.cols());
  for (const auto& a : problem.agents) {
    G += local_gradient(a, X, sigma);
    const Matrix Y = prox(a.reg, sigma, X);
    cert.max_prox_gap = std::max(cert.max_prox_gap, (X - Y).norm());
  }
  cert.grad_residual = proj_tangent(X, G).norm();
  cert.feas = feasibility(X);
  cert.passed = cert.grad_residual <= epsilon && cert.max_prox_gap <= epsilon &&
                cert.feas <= epsilon;
  cert.sigma_premise =
      problem.lipschitz_g <= 0.0 || sigma <= epsilon / (2.0 * problem.lipschitz_g);
  return cert;
}

static std::string format_value(double v) {
  std::ostringstream ss;
  ss << std::setprecision(17) << v;
  return ss.str();
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
  if (!out_) throw IngestionError("cannot open metrics file: " + path);
  out_ << "k,dist,feas,consensus,stat_residual,sigma,eta\n";
  out_.flush();
}

void CsvWriter::write(const RunRecord& rec) {
  out_ << rec.k << ',';
  if (rec.dist) out_ << format_value(*rec.dist);
  out_ << ',' << format_value(rec.feas) << ',' << format_value(rec.consensus)
       << ',' << format_value(rec.stat_residual) << ',' << format_value(rec.sigma)
       << ',' << format_value(rec.eta) << '\n';
  out_.flush();
  if (!out_) throw IngestionError("write failed: " + path_);
}

void write_csv(const std::vector<RunRecord>& records, const std::string& path) {
  CsvWriter writer(path);
  for (const auto& rec : records) writer.write(rec);
}

}  // namespace thanos
