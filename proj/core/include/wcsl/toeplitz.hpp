#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wcsl/eigen_solver.hpp"

namespace wcsl {

inline constexpr long long kDefaultSizeCap = 8192;

// A(N, K): (N+1) x (N+1) grid of K x K blocks, block (i, j) = A_{i-j} for
// i >= j and A_{j-i}^T otherwise.
struct KernelMatrix {
  int N = 0;
  int K = 1;
  std::vector<Eigen::MatrixXd> blocks;  // A_0 .. A_N
  Eigen::MatrixXd dense;

  Eigen::Index dimension() const noexcept { return dense.rows(); }
};

// Blocks A_0 .. A_{count-1}, (A_n)_{k,l} = entry(n, k, 0, l).
std::vector<Eigen::MatrixXd> kernel_blocks(int count, int K);

Eigen::MatrixXd expand_blocks(const std::vector<Eigen::MatrixXd>& blocks, int N, int K);

KernelMatrix assemble(int N, int K, long long size_cap = kDefaultSizeCap);

SpectralResult spectrum_extremes(const KernelMatrix& m, const EigenOptions& options = {});

struct K1Bounds {
  int N = 1;
  double lower = 0.0;  // S / (N+1), S the sum of all entries of A(N, 1)
  double upper = 0.0;  // a_0 + 2 sum_{n=1}^N a_n
};

K1Bounds k1_bounds(int N);

}  // namespace wcsl
