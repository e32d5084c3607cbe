#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thanos/metrics.hpp"

using namespace thanos;

namespace {

DecentralizedProblem small_instance(int n, int p, int d, double mu,
                                    std::uint64_t seed) {
  return sparse_pca_problem(generate_gaussian_data(n, 4 * d, d, mu, seed),
                            RegKind::L1, p);
}

std::vector<AgentState> states_from(const std::vector<Matrix>& xs) {
  std::vector<AgentState> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    AgentState s;
    s.agent_id = static_cast<int>(i);
    s.X = xs[i];
    s.D = Matrix::Zero(xs[i].rows(), xs[i].cols());
    s.H = s.D;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

TEST_CASE("record at a common feasible point equal to the reference") {
  const DecentralizedProblem prob = small_instance(5, 2, 3, 0.2, 1);
  const Matrix X = random_stiefel(5, 2, 2).value;
  const auto states = states_from({X, X, X});
  const RunRecord rec = record(states, prob, 0.3, 1e-2, 7, &X);
  CHECK(rec.k == 7);
  REQUIRE(rec.dist.has_value());
  CHECK(*rec.dist == doctest::Approx(0.0));
  CHECK(rec.feas == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(rec.consensus == doctest::Approx(0.0));
}

TEST_CASE("consensus of two opposite states") {
  const DecentralizedProblem prob = small_instance(4, 2, 2, 0.2, 3);
  const Matrix P = random_gaussian(4, 2, 4);
  const auto states = states_from({P, -P});
  const RunRecord rec = record(states, prob, 0.3, 1e-2, 0);
  CHECK(rec.consensus == doctest::Approx(P.norm()).epsilon(1e-12));
  CHECK_FALSE(rec.dist.has_value());
}

TEST_CASE("record fields match a naive reimplementation") {
  const DecentralizedProblem prob = small_instance(5, 2, 3, 0.25, 5);
  std::vector<Matrix> xs = {random_gaussian(5, 2, 6), random_gaussian(5, 2, 7),
                            random_gaussian(5, 2, 8)};
  const Matrix X_star = random_stiefel(5, 2, 9).value;
  const double sigma = 0.4;
  const RunRecord rec = record(states_from(xs), prob, sigma, 2e-3, 3, &X_star);

  Matrix X_bar = (xs[0] + xs[1] + xs[2]) / 3.0;
  double feas = 0, cons = 0, dist = 0;
  for (const Matrix& x : xs) {
    feas += (x.transpose() * x - Matrix::Identity(2, 2)).norm();
    cons += (x - X_bar).norm();
    dist += (x - X_star).norm();
  }
  Matrix G = Matrix::Zero(5, 2);
  for (const auto& a : prob.agents)
    G += a.smooth.grad(X_bar) + env_grad(a.reg, sigma, X_bar);
  const double stat = (G - X_bar * sym(X_bar.transpose() * G)).norm();

  CHECK(rec.feas == doctest::Approx(feas / 3).epsilon(1e-12));
  CHECK(rec.consensus == doctest::Approx(cons / 3).epsilon(1e-12));
  CHECK(*rec.dist == doctest::Approx(dist / 3).epsilon(1e-12));
  CHECK(rec.stat_residual == doctest::Approx(stat).epsilon(1e-12));
  CHECK(rec.sigma == 0.4);
  CHECK(rec.eta == 2e-3);
}

TEST_CASE("consensus is zero iff all states agree") {
  const DecentralizedProblem prob = small_instance(4, 2, 2, 0.2, 10);
  const Matrix P = random_gaussian(4, 2, 11);
  CHECK(record(states_from({P, P}), prob, 0.3, 1e-2, 0).consensus < 1e-12);
  CHECK(record(states_from({P, P + Matrix::Constant(4, 2, 1e-6)}), prob, 0.3, 1e-2, 0)
            .consensus > 1e-8);
}

TEST_CASE("stationarity certificate on the leading-eigenvector instance") {
  // n = 2, p = 1, d = 1, mu = 0: the solution is the leading eigenvector.
  const SparsePcaData data = generate_gaussian_data(2, 4, 1, 0.0, 12);
  const DecentralizedProblem prob = sparse_pca_problem(data, RegKind::L1, 1);
  Eigen::SelfAdjointEigenSolver<Matrix> es(data.A * data.A.transpose());
  Matrix X(2, 1);
  X = es.eigenvectors().col(1);  // largest eigenvalue

  const StationarityCertificate cert = check_epsilon_stationary(X, prob, 0.1, 1e-3);
  CHECK(cert.grad_residual < 1e-10);
  CHECK(cert.max_prox_gap == 0.0);  // weight-zero regularizer
  CHECK(cert.feas < 1e-12);
  CHECK(cert.passed);
  CHECK(cert.sigma_premise);
}

TEST_CASE("certificate fails at the origin") {
  const DecentralizedProblem prob = small_instance(4, 2, 2, 0.2, 13);
  const StationarityCertificate cert =
      check_epsilon_stationary(Matrix::Zero(4, 2), prob, 0.1, 0.5);
  CHECK(cert.feas == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_FALSE(cert.passed);
}

TEST_CASE("prox gap bound 2 sigma L_g holds on random points") {
  for (RegKind kind : {RegKind::L1, RegKind::L21}) {
    const DecentralizedProblem prob = sparse_pca_problem(
        generate_gaussian_data(5, 8, 2, 0.3, 14), kind, 2);
    const double sigma = 0.7;
    for (int s = 0; s < 100; ++s) {
      const Matrix X = 3.0 * random_gaussian(5, 2, 1000 + s);
      const StationarityCertificate cert =
          check_epsilon_stationary(X, prob, sigma, 1.0);
      CHECK(cert.max_prox_gap <= 2.0 * sigma * prob.lipschitz_g + 1e-12);
    }
  }
}

TEST_CASE("tangent residual ignores X S components at feasible points") {
  const DecentralizedProblem prob = small_instance(6, 2, 2, 0.2, 15);
  const Matrix X = random_stiefel(6, 2, 16).value;
  const Matrix G = random_gaussian(6, 2, 17);
  const Matrix S = sym(random_gaussian(2, 2, 18));
  CHECK((proj_tangent(X, G + X * S) - proj_tangent(X, G)).norm() < 1e-12);
}

TEST_CASE("csv writer format and round trip") {
  namespace fs = std::filesystem;
  const std::string path = (fs::temp_directory_path() / "thanos_metrics.csv").string();

  SUBCASE("empty stream gives a header-only file") {
    write_csv({}, path);
    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "k,dist,feas,consensus,stat_residual,sigma,eta");
    CHECK_FALSE(std::getline(in, line));
  }

  SUBCASE("three records give four lines and parse back exactly") {
    std::vector<RunRecord> recs;
    for (int k = 1; k <= 3; ++k) {
      RunRecord r;
      r.k = k;
      if (k != 2) r.dist = 0.1 * k + 1e-17;
      r.feas = 1.0 / 3.0 * k;
      r.consensus = 2e-5 * k;
      r.stat_residual = std::sqrt(2.0) * k;
      r.sigma = std::pow(static_cast<double>(k), -1.0 / 3.0);
      r.eta = 1e-2;
      recs.push_back(r);
    }
    write_csv(recs, path);

    std::ifstream in(path);
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 4);

    for (int k = 1; k <= 3; ++k) {
      std::stringstream ss(lines[k]);
      std::string cell;
      std::vector<std::string> cells;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      REQUIRE(cells.size() == 7);
      CHECK(std::stol(cells[0]) == recs[k - 1].k);
      if (recs[k - 1].dist) {
        CHECK(std::stod(cells[1]) == *recs[k - 1].dist);
      } else {
        CHECK(cells[1].empty());
      }
      CHECK(std::stod(cells[2]) == recs[k - 1].feas);
      CHECK(std::stod(cells[3]) == recs[k - 1].consensus);
      CHECK(std::stod(cells[4]) == recs[k - 1].stat_residual);
      CHECK(std::stod(cells[5]) == recs[k - 1].sigma);
      CHECK(std::stod(cells[6]) == recs[k - 1].eta);
    }
  }

  fs::remove(path);
}
