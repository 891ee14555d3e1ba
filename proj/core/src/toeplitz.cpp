#include "wcsl/toeplitz.hpp"

#include <string>

#include "wcsl/error.hpp"
#include "wcsl/kernel.hpp"
#include "wcsl/numeric/compensated_sum.hpp"
#include "wcsl/numeric/parallel.hpp"

namespace wcsl {

std::vector<Eigen::MatrixXd> kernel_blocks(int count, int K) {
  if (K < 1) throw DomainError("block size K must be >= 1, got " + std::to_string(K));
  if (count < 0) throw DomainError("block count must be >= 0");
  std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(count), Eigen::MatrixXd(K, K));
  numeric::parallel_for(static_cast<std::size_t>(count), [&](std::size_t n) {
    Eigen::MatrixXd& b = blocks[n];
    for (int k = 1; k <= K; ++k) {
      for (int l = 1; l <= K; ++l) b(k - 1, l - 1) = entry({static_cast<int>(n), k, 0, l});
    }
  });
  return blocks;
}

Eigen::MatrixXd expand_blocks(const std::vector<Eigen::MatrixXd>& blocks, int N, int K) {
  const Eigen::Index dim = static_cast<Eigen::Index>(N + 1) * K;
  Eigen::MatrixXd dense(dim, dim);
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; j <= N; ++j) {
      auto target = dense.block(static_cast<Eigen::Index>(i) * K, static_cast<Eigen::Index>(j) * K, K, K);
      if (i >= j) {
        target = blocks[i - j].topLeftCorner(K, K);
      } else {
        target = blocks[j - i].topLeftCorner(K, K).transpose();
      }
    }
  }
  return dense;
}

KernelMatrix assemble(int N, int K, long long size_cap) {
  if (N < 0) throw DomainError("N must be >= 0, got " + std::to_string(N));
  if (K < 1) throw DomainError("K must be >= 1, got " + std::to_string(K));
  const long long dim = static_cast<long long>(N + 1) * K;
  if (dim > size_cap) {
    throw ResourceError("matrix dimension " + std::to_string(dim) + " exceeds size cap " +
                            std::to_string(size_cap),
                        size_cap);
  }
  KernelMatrix m;
  m.N = N;
  m.K = K;
  m.blocks = kernel_blocks(N + 1, K);
  m.dense = expand_blocks(m.blocks, N, K);
  return m;
}

SpectralResult spectrum_extremes(const KernelMatrix& m, const EigenOptions& options) {
  return extremal_eigenpairs(m.dense, options);
}

K1Bounds k1_bounds(int N) {
  if (N < 1) throw DomainError("k1_bounds requires N >= 1, got " + std::to_string(N));
  numeric::CompensatedSum weighted, plain;
  const double a0 = a_seq(0);
  weighted += a0;
  plain += a0;
  for (int n = 1; n <= N; ++n) {
    const double an = a_seq(n);
    weighted += 2.0 * (N + 1.0 - n) / (N + 1.0) * an;
    plain += 2.0 * an;
  }
  return {N, weighted.value(), plain.value()};
}

}  // namespace wcsl
