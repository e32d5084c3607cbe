#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "thanos/errors.hpp"
#include "thanos/problem.hpp"

using namespace thanos;

namespace {

SparsePcaData make_data(int n, int m, int d, double mu, std::uint64_t seed) {
  return generate_gaussian_data(n, m, d, mu, seed);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("local objective with identity data") {
  SparsePcaData data;
  data.A = Matrix::Identity(3, 3);
  data.partitions = {{0, 3}};
  data.mu = 0.1;
  const DecentralizedProblem prob = sparse_pca_problem(data, RegKind::L1, 3);
  const Matrix X = Matrix::Identity(3, 3);
  CHECK(prob.agents[0].smooth.value(X) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("gradients match finite differences for every agent") {
  const SparsePcaData data = make_data(6, 12, 4, 0.2, 3);
  const DecentralizedProblem prob = sparse_pca_problem(data, RegKind::L1, 2);
  const Matrix X = random_gaussian(6, 2, 17);
  const double h = 1e-6;
  for (const auto& agent : prob.agents) {
    const Matrix G = agent.smooth.grad(X);
    for (int i = 0; i < X.size(); ++i) {
      Matrix Xp = X, Xm = X;
      Xp(i) += h;
      Xm(i) -= h;
      const double fd = (agent.smooth.value(Xp) - agent.smooth.value(Xm)) / (2 * h);
      CHECK(G(i) == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("objective sum is invariant to the partition") {
  const Matrix A = random_gaussian(5, 8, 4);
  const Matrix X = random_gaussian(5, 2, 5);

  auto total = [&X](const DecentralizedProblem& prob) {
    double acc = 0.0;
    for (const auto& a : prob.agents)
      acc += a.smooth.value(X) + reg_value(a.reg, X);
    return acc;
  };

  SparsePcaData one{A, {{0, 8}}, 0.3};
  SparsePcaData four{A, partition_columns(8, 4), 0.3};
  const double v1 = total(sparse_pca_problem(one, RegKind::L21, 2));
  const double v4 = total(sparse_pca_problem(four, RegKind::L21, 2));
  CHECK(v1 == doctest::Approx(v4).epsilon(1e-10));
}

TEST_CASE("global objective consistency with the unpartitioned matrix") {
  const SparsePcaData data = make_data(6, 20, 5, 0.25, 8);
  const DecentralizedProblem prob = sparse_pca_problem(data, RegKind::L1, 3);
  const Matrix X = random_gaussian(6, 3, 9);

  double dec = 0.0;
  for (const auto& a : prob.agents) dec += a.smooth.value(X) + reg_value(a.reg, X);

  const double direct =
      -0.5 * (X.transpose() * data.A * data.A.transpose() * X).trace() +
      data.mu * X.array().abs().sum();
  CHECK(dec == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("gradient Lipschitz bound holds on random feasible pairs") {
  const SparsePcaData data = make_data(8, 16, 4, 0.1, 12);
  const DecentralizedProblem prob = sparse_pca_problem(data, RegKind::L1, 2);
  for (int s = 0; s < 20; ++s) {
    const Matrix X = random_stiefel(8, 2, 100 + s).value;
    const Matrix Y = random_stiefel(8, 2, 200 + s).value;
    for (const auto& a : prob.agents) {
      CHECK((a.smooth.grad(X) - a.smooth.grad(Y)).norm() <=
            a.smooth.lipschitz * (X - Y).norm() + 1e-9);
    }
  }
}

TEST_CASE("spectral norm matches a dense eigensolver") {
  const Matrix A = random_gaussian(6, 9, 13);
  const Matrix M = A * A.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> es(M);
  CHECK(spectral_norm_psd(M) ==
        doctest::Approx(es.eigenvalues().maxCoeff()).epsilon(1e-8));
}

TEST_CASE("data generation partitions and determinism") {
  const SparsePcaData full = make_data(10, 320, 32, 0.1, 1);
  REQUIRE(full.partitions.size() == 32);
  for (const auto& [b, e] : full.partitions) CHECK(e - b == 10);

  const SparsePcaData rem = make_data(4, 5, 2, 1.0, 1);
  CHECK(rem.partitions[0] == std::pair<int, int>{0, 3});
  CHECK(rem.partitions[1] == std::pair<int, int>{3, 5});

  const SparsePcaData a = make_data(4, 6, 2, 1.0, 77);
  const SparsePcaData b = make_data(4, 6, 2, 1.0, 77);
  CHECK((a.A - b.A).norm() == 0.0);

  CHECK_THROWS_AS(make_data(4, 3, 5, 1.0, 0), ConfigError);
}

TEST_CASE("csv ingestion, bad cell location, round trip") {
  const std::string good = temp_path("thanos_test_good.csv");
  {
    std::ofstream out(good);
    out << "1,2,3,4\n5,6,7,8\n9,10,11,12\n";
  }
  const SparsePcaData data = load_data_csv(good, 2, 0.5);
  CHECK(data.A.rows() == 3);
  CHECK(data.A.cols() == 4);
  CHECK(data.partitions[0] == std::pair<int, int>{0, 2});
  CHECK(data.partitions[1] == std::pair<int, int>{2, 4});

  const std::string bad = temp_path("thanos_test_bad.csv");
  {
    std::ofstream out(bad);
    out << "1,2,3\n4,5,abc\n";
  }
  try {
    load_data_csv(bad, 1, 0.5);
    FAIL("expected IngestionError");
  } catch (const IngestionError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("col 3") != std::string::npos);
  }

  const std::string ragged = temp_path("thanos_test_ragged.csv");
  {
    std::ofstream out(ragged);
    out << "1,2\n3\n";
  }
  CHECK_THROWS_AS(load_data_csv(ragged, 1, 0.5), IngestionError);

  // round trip through the matrix writer
  const SparsePcaData gen = make_data(5, 7, 2, 0.3, 5);
  const std::string rt = temp_path("thanos_test_rt.csv");
  save_matrix_csv(gen.A, rt);
  const SparsePcaData back = load_data_csv(rt, 2, 0.3);
  CHECK((gen.A - back.A).norm() < 1e-15);

  std::filesystem::remove(good);
  std::filesystem::remove(bad);
  std::filesystem::remove(ragged);
  std::filesystem::remove(rt);
}

TEST_CASE("missing file and empty partition errors") {
  CHECK_THROWS_AS(load_data_csv(temp_path("thanos_no_such_file.csv"), 2, 0.1),
                  IngestionError);

  SparsePcaData data;
  data.A = random_gaussian(3, 4, 1);
  data.partitions = {{0, 2}, {2, 2}};
  data.mu = 0.1;
  CHECK_THROWS_AS(sparse_pca_problem(data, RegKind::L1, 2), ConfigError);
}
