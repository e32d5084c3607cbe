#include "thanos/network.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "thanos/errors.hpp"

namespace thanos {

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(d, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(d);
  for (const auto& [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (auto& lst : adj) std::sort(lst.begin(), lst.end());
  return adj;
}

bool Graph::connected() const {
  if (d <= 1) return true;
  const auto adj = adjacency();
  std::vector<bool> seen(d, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == d;
}

Graph erdos_renyi(int d, double prob, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("erdos_renyi: d must be >= 1");
  if (!(prob > 0.0) || prob > 1.0)
    throw std::invalid_argument("erdos_renyi: prob must be in (0, 1]");
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Graph g;
    g.d = d;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (unif(rng) < prob) g.edges.emplace_back(i, j);
    if (g.connected()) return g;
  }
  throw std::runtime_error("erdos_renyi: no connected sample in 1000 attempts (d=" +
                           std::to_string(d) + ", prob=" + std::to_string(prob) + ")");
}

Graph ring(int d) {
  if (d < 2) throw std::invalid_argument("ring: d must be >= 2");
  Graph g;
  g.d = d;
  for (int i = 0; i + 1 < d; ++i) g.edges.emplace_back(i, i + 1);
  if (d > 2) g.edges.emplace_back(0, d - 1);
  return g;
}

Graph complete(int d) {
  if (d < 1) throw std::invalid_argument("complete: d must be >= 1");
  Graph g;
  g.d = d;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) g.edges.emplace_back(i, j);
  return g;
}

Graph star(int d) {
  if (d < 2) throw std::invalid_argument("star: d must be >= 2");
  Graph g;
  g.d = d;
  for (int j = 1; j < d; ++j) g.edges.emplace_back(0, j);
  return g;
}

MixingMatrix metropolis_weights(const Graph& g) {
  if (!g.connected())
    throw std::runtime_error("metropolis_weights: graph is not connected");
  const int d = g.d;
  const auto deg = g.degrees();

  MixingMatrix mm;
  mm.W = Matrix::Zero(d, d);
  for (const auto& [i, j] : g.edges) {
    const double w = 1.0 / (1.0 + std::max(deg[i], deg[j]));
    mm.W(i, j) = w;
    mm.W(j, i) = w;
  }
  for (int i = 0; i < d; ++i) mm.W(i, i) = 1.0 - mm.W.row(i).sum();

  Matrix centered = mm.W - Matrix::Constant(d, d, 1.0 / d);
  Eigen::SelfAdjointEigenSolver<Matrix> es(centered);
  mm.lambda = es.eigenvalues().cwiseAbs().maxCoeff();

  mm.neighborhoods = g.adjacency();
  for (int i = 0; i < d; ++i) {
    auto& nb = mm.neighborhoods[i];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), i), i);
  }
  return mm;
}

std::vector<Matrix> mix(const MixingMatrix& W, const std::vector<Matrix>& payloads) {
  const int d = W.d();
  if (static_cast<int>(payloads.size()) != d)
    throw std::invalid_argument("mix: payload count does not match W");
  for (const auto& P : payloads)
    if (P.rows() != payloads.front().rows() || P.cols() != payloads.front().cols())
      throw std::invalid_argument("mix: payload shape mismatch");

  std::vector<Matrix> out(d);
  for (int i = 0; i < d; ++i) {
    Matrix acc = Matrix::Zero(payloads.front().rows(), payloads.front().cols());
    for (int j : W.neighborhoods[i]) acc += W.W(i, j) * payloads[j];
    out[i] = std::move(acc);
  }
  return out;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IngestionError("cannot write edge list: " + path);
  for (const auto& [i, j] : g.edges) out << i << ' ' << j << '\n';
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestionError("cannot open edge list: " + path);
  Graph g;
  std::string line;
  int lineno = 0;
  int max_node = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int i = -1, j = -1;
    if (!(ss >> i >> j) || i < 0 || j < 0 || i == j)
      throw IngestionError("bad edge at line " + std::to_string(lineno) + " in " + path);
    if (i > j) std::swap(i, j);
    g.edges.emplace_back(i, j);
    max_node = std::max(max_node, j);
  }
  if (max_node < 0) throw IngestionError("empty edge list: " + path);
  g.d = max_node + 1;
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

}  // namespace thanos
