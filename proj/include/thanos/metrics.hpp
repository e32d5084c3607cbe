#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "thanos/tracker.hpp"

namespace thanos {

// Certificate for the three conditions of first-order epsilon-stationarity:
// projected gradient at X, prox gap to the points Y_i = prox_{sigma,g_i}(X),
// and feasibility. sigma_premise reports sigma <= epsilon / (2 L_g), the
// premise under which envelope stationarity transfers to the original
// problem.
struct StationarityCertificate {
  double epsilon = 0.0;
  double grad_residual = 0.0;
  double max_prox_gap = 0.0;
  double feas = 0.0;
  bool passed = false;
  bool sigma_premise = false;
};

// Centralized observer: evaluates every agent's functions at the averaged
// iterate. Measurement only; the update path in the tracker never does this.
RunRecord record(const std::vector<AgentState>& states,
                 const DecentralizedProblem& problem, double sigma, double eta,
                 long k, const Matrix* X_star = nullptr,
                 bool align_columns = false);

StationarityCertificate check_epsilon_stationary(const Matrix& X,
                                                 const DecentralizedProblem& problem,
                                                 double sigma, double epsilon);

// Incremental CSV writer: header `k,dist,feas,consensus,stat_residual,sigma,eta`,
// 17 significant digits, one flush per row so aborted runs keep partial logs.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void write(const RunRecord& rec);

 private:
  std::ofstream out_;
  std::string path_;
};

void write_csv(const std::vector<RunRecord>& records, const std::string& path);

}  // namespace thanos
