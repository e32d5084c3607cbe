#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thanos/manifold.hpp"

namespace thanos {

// Connected undirected graph on d nodes; no self-loops, no duplicates.
struct Graph {
  int d = 0;
  std::vector<std::pair<int, int>> edges;  // (i, j) with i < j

  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency() const;  // sorted neighbor lists
  bool connected() const;
};

// Symmetric doubly-stochastic W conforming to the graph, with
// lambda = ||W - 11^T/d||_2 < 1.
struct MixingMatrix {
  Matrix W;
  double lambda = 0.0;
  // Sorted closed neighborhoods (neighbors plus self); mix() reads only
  // these entries of the payload list.
  std::vector<std::vector<int>> neighborhoods;

  int d() const { return static_cast<int>(W.rows()); }
};

// Each pair connected independently with probability prob; disconnected
// samples are resampled with an incremented seed, up to 1000 attempts.
Graph erdos_renyi(int d, double prob, std::uint64_t seed);

Graph ring(int d);
Graph complete(int d);
Graph star(int d);

// W(i,j) = 1/(1 + max(deg i, deg j)) on edges, diagonal absorbs the rest.
MixingMatrix metropolis_weights(const Graph& g);

// output[i] = sum_j W(i,j) payloads[j], gathered over the neighbor lists
// in sorted order (deterministic, locality-respecting).
std::vector<Matrix> mix(const MixingMatrix& W, const std::vector<Matrix>& payloads);

// Edge-list text format: one "i j" pair per line, 0-indexed.
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

}  // namespace thanos
