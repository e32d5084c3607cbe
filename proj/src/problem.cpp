#include "thanos/problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "thanos/errors.hpp"

namespace thanos {

double spectral_norm_psd(const Matrix& M, double tol, int max_iters) {
  if (M.rows() == 0) return 0.0;
  if (M.norm() == 0.0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(M.rows()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd w = M * v;
    const double nrm = w.norm();
    if (nrm == 0.0) return 0.0;
    w /= nrm;
    const double next = w.dot(M * w);
    if (std::abs(next - lambda) <= tol * std::max(1.0, std::abs(next))) {
      return next;
    }
    lambda = next;
    v = w;
  }
  return lambda;
}

std::vector<std::pair<int, int>> partition_columns(int m, int d) {
  if (d < 1) throw ConfigError("partition: need at least one agent");
  if (m < d)
    throw ConfigError("partition: fewer columns (" + std::to_string(m) +
                      ") than agents (" + std::to_string(d) + ")");
  std::vector<std::pair<int, int>> parts;
  parts.reserve(d);
  const int base = m / d;
  const int extra = m % d;
  int begin = 0;
  for (int i = 0; i < d; ++i) {
    const int len = base + (i < extra ? 1 : 0);
    parts.emplace_back(begin, begin + len);
    begin += len;
  }
  return parts;
}

DecentralizedProblem sparse_pca_problem(const SparsePcaData& data,
                                        RegKind reg_kind, int p) {
  const int n = static_cast<int>(data.A.rows());
  if (p > n || p < 1)
    throw ConfigError("sparse_pca_problem: need n >= p >= 1");
  if (data.mu < 0.0) throw ConfigError("sparse_pca_problem: mu must be nonnegative");
  const int d = static_cast<int>(data.partitions.size());
  if (d == 0) throw ConfigError("sparse_pca_problem: no partitions");

  DecentralizedProblem prob;
  prob.n = n;
  prob.p = p;
  const double per_agent_weight = data.mu / d;

  for (const auto& [begin, end] : data.partitions) {
    if (end <= begin) throw ConfigError("sparse_pca_problem: empty partition");
    const Matrix Ai = data.A.middleCols(begin, end - begin);
    const Matrix Mi = Ai * Ai.transpose();  // n x n, small at desk scale

    Agent agent;
    agent.smooth.value = [Mi](const Matrix& X) {
      return -0.5 * (X.transpose() * Mi * X).trace();
    };
    agent.smooth.grad = [Mi](const Matrix& X) -> Matrix { return -Mi * X; };
    agent.smooth.lipschitz = spectral_norm_psd(Mi);
    agent.smooth.linear_gradient = true;
    agent.reg = reg_kind == RegKind::L1 ? Regularizer::l1(per_agent_weight, n, p)
                                        : Regularizer::l21(per_agent_weight, n, p);
    prob.agents.push_back(std::move(agent));
  }

  for (const auto& a : prob.agents) {
    prob.lipschitz_f = std::max(prob.lipschitz_f, a.smooth.lipschitz);
    prob.lipschitz_g = std::max(prob.lipschitz_g, a.reg.lipschitz);
  }
  return prob;
}

SparsePcaData generate_gaussian_data(int n, int m, int d, double mu,
                                     std::uint64_t seed) {
  SparsePcaData data;
  data.partitions = partition_columns(m, d);
  data.A = random_gaussian(n, m, seed);
  data.mu = mu;
  return data;
}

SparsePcaData load_data_csv(const std::string& path, int d, double mu,
                            bool skip_header) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open data file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_header && lineno == 1) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      ++col;
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
          ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
        row.push_back(v);
      } catch (const std::exception&) {
        throw IngestionError("non-numeric cell at row " + std::to_string(lineno) +
                             " col " + std::to_string(col) + " in " + path);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IngestionError("ragged row " + std::to_string(lineno) + " in " + path +
                           ": expected " + std::to_string(rows.front().size()) +
                           " cells, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IngestionError("empty data file: " + path);

  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(rows.front().size());
  SparsePcaData data;
  try {
    data.partitions = partition_columns(m, d);
  } catch (const ConfigError& e) {
    throw IngestionError(std::string(e.what()) + " (from " + path + ")");
  }
  data.A.resize(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) data.A(i, j) = rows[i][j];
  data.mu = mu;
  return data;
}

void save_matrix_csv(const Matrix& X, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write matrix file: " + path);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (j) out << ',';
      out << X(i, j);
    }
    out << '\n';
  }
  if (!out) throw IngestionError("write failed: " + path);
}

Matrix load_matrix_csv(const std::string& path) {
  const SparsePcaData data = load_data_csv(path, 1, 1.0, false);
  return data.A;
}

}  // namespace thanos
