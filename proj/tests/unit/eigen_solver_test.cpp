#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "wcsl/eigen_solver.hpp"
#include "wcsl/error.hpp"
#include "wcsl/toeplitz.hpp"

using namespace wcsl;

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
  return a;
}

}  // namespace

TEST(Eigen, DenseResidualCertificate) {
  const Eigen::MatrixXd a = random_symmetric(60, 1);
  const SpectralResult r = extremal_eigenpairs(a);
  EXPECT_FALSE(r.iterative);
  EXPECT_LT(r.residual_max, 1e-12 * r.norm);
  EXPECT_LT(r.residual_min, 1e-12 * r.norm);
  EXPECT_NEAR(r.v_max.norm(), 1.0, 1e-14);
  EXPECT_LE(r.lambda_min, r.lambda_max);
}

TEST(Eigen, LanczosMatchesDense) {
  const Eigen::MatrixXd a = random_symmetric(300, 2);
  const SpectralResult dense = extremal_eigenpairs(a);
  EigenOptions opts;
  opts.dense_threshold = 10;
  const SpectralResult lz = extremal_eigenpairs(a, opts);
  EXPECT_TRUE(lz.iterative);
  EXPECT_NEAR(lz.lambda_max, dense.lambda_max, 1e-9);
  EXPECT_NEAR(lz.lambda_min, dense.lambda_min, 1e-9);
  EXPECT_NEAR(std::abs(lz.v_max.dot(dense.v_max)), 1.0, 1e-8);
}

TEST(Eigen, LanczosOnKernelMatrix) {
  const KernelMatrix m = assemble(60, 5);
  const SpectralResult dense = extremal_eigenpairs(m.dense);
  const SpectralResult lz = lanczos_extremal(m.dense);
  EXPECT_NEAR(lz.lambda_max, dense.lambda_max, 1e-10);
  EXPECT_NEAR(lz.lambda_min, dense.lambda_min, 1e-10);
}

TEST(Eigen, PowerIterationOracleOnPrintedMatrix) {
  const Eigen::MatrixXd a = assemble(2, 3).dense;
  const auto p = power_iteration(a);
  EXPECT_NEAR(p.lambda, extremal_eigenpairs(a).lambda_max, 1e-9);
  EXPECT_LT(p.residual, 1e-12);
}

TEST(Eigen, PowerIterationReportsFailure) {
  // +-1 eigenvalues of equal magnitude: the iteration cannot settle.
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(2, 2);
  b(1, 1) = -1;
  EXPECT_THROW(power_iteration(b, 1e-13, 200), NumericalError);
}

TEST(Eigen, OneByOneAndInvalidInput) {
  Eigen::MatrixXd a(1, 1);
  a(0, 0) = 0.5;
  const auto r = extremal_eigenpairs(a);
  EXPECT_EQ(r.lambda_max, 0.5);
  EXPECT_EQ(r.lambda_min, 0.5);
  EXPECT_THROW(extremal_eigenpairs(Eigen::MatrixXd(2, 3)), DomainError);
  EXPECT_THROW(extremal_eigenpairs(Eigen::MatrixXd(0, 0)), DomainError);
}

TEST(Eigen, SignNormalization) {
  Eigen::VectorXd v(3);
  v << 0.0, -0.6, 0.8;
  normalize_sign(v);
  EXPECT_GT(v[1], 0.0);
  EXPECT_LT(v[2], 0.0);
}
