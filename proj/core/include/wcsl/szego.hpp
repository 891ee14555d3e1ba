#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace wcsl {

inline constexpr int kDefaultTruncation = 50;

struct SymbolTruncation {
  int M = kDefaultTruncation;
  int K = 1;
};

void validate(const SymbolTruncation& trunc);

// f(t) = a_0 + 2 sum_{n=1}^M a_n cos(n t). Requires trunc.K == 1.
double scalar_symbol(double t, const SymbolTruncation& trunc);

// F_K(t) = A_0 + sum_{n=1}^M (A_n e^{int} + A_n^T e^{-int}); the lower
// triangle is the conjugate of the upper one, so F is exactly Hermitian.
Eigen::MatrixXcd block_symbol(double t, const SymbolTruncation& trunc);

// Same, from precomputed blocks A_0 .. A_M of size >= K (leading K x K used).
Eigen::MatrixXcd block_symbol(double t, int K, std::span<const Eigen::MatrixXd> blocks);

struct HermitianExtremum {
  double lambda_max = 0.0;
  double residual = 0.0;
};

HermitianExtremum hermitian_lambda_max(const Eigen::MatrixXcd& f);

struct SymbolCurve {
  int K = 1;
  int M = kDefaultTruncation;
  std::vector<double> grid;
  std::vector<double> values;
  std::size_t argmax = 0;
  bool max_at_zero = false;  // grid maximum attained at t = 0 (or t = 2 pi)
  double max_residual = 0.0;
};

SymbolCurve symbol_curve(int K, int M, int gridpoints);

struct FourierRow {
  int K = 1;
  double lambda_max = 0.0;
  double residual = 0.0;
};

std::vector<FourierRow> fourier_table(int K_max, int M);

// Estimate of sum_{n>M} ||A_n||_inf from the geometric decay of the last
// two retained blocks.
double truncation_tail_estimate(int M, int K);

}  // namespace wcsl
