#include "wcsl/szego.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "wcsl/error.hpp"
#include "wcsl/kernel.hpp"
#include "wcsl/numeric/compensated_sum.hpp"
#include "wcsl/numeric/parallel.hpp"
#include "wcsl/toeplitz.hpp"

namespace wcsl {

void validate(const SymbolTruncation& trunc) {
  if (trunc.M < 1) throw DomainError("truncation M must be >= 1, got " + std::to_string(trunc.M));
  if (trunc.K < 1) throw DomainError("block size K must be >= 1, got " + std::to_string(trunc.K));
}

double scalar_symbol(double t, const SymbolTruncation& trunc) {
  validate(trunc);
  if (trunc.K != 1) throw DomainError("scalar symbol needs K = 1");
  numeric::CompensatedSum s(a_seq(0));
  for (int n = 1; n <= trunc.M; ++n) s += 2.0 * a_seq(n) * std::cos(n * t);
  return s.value();
}

Eigen::MatrixXcd block_symbol(double t, int K, std::span<const Eigen::MatrixXd> blocks) {
  if (blocks.empty()) throw DomainError("block symbol needs at least A_0");
  Eigen::MatrixXcd f = blocks[0].topLeftCorner(K, K).cast<std::complex<double>>();
  for (std::size_t n = 1; n < blocks.size(); ++n) {
    const std::complex<double> e = std::polar(1.0, static_cast<double>(n) * t);
    const auto& a = blocks[n];
    for (int i = 0; i < K; ++i) {
      for (int j = i; j < K; ++j) f(i, j) += a(i, j) * e + a(j, i) * std::conj(e);
    }
  }
  for (int i = 0; i < K; ++i) {
    f(i, i) = f(i, i).real();
    for (int j = i + 1; j < K; ++j) f(j, i) = std::conj(f(i, j));
  }
  return f;
}

Eigen::MatrixXcd block_symbol(double t, const SymbolTruncation& trunc) {
  validate(trunc);
  const auto blocks = kernel_blocks(trunc.M + 1, trunc.K);
  return block_symbol(t, trunc.K, blocks);
}

HermitianExtremum hermitian_lambda_max(const Eigen::MatrixXcd& f) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(f);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge", std::nan(""));
  }
  const Eigen::Index last = f.rows() - 1;
  const double lambda = es.eigenvalues()[last];
  const Eigen::VectorXcd v = es.eigenvectors().col(last);
  return {lambda, (f * v - lambda * v).norm()};
}

SymbolCurve symbol_curve(int K, int M, int gridpoints) {
  validate(SymbolTruncation{M, K});
  if (gridpoints < 3) throw DomainError("symbol curve needs at least 3 grid points");
  const auto blocks = kernel_blocks(M + 1, K);

  SymbolCurve curve;
  curve.K = K;
  curve.M = M;
  curve.grid.resize(static_cast<std::size_t>(gridpoints));
  curve.values.resize(curve.grid.size());
  std::vector<double> residuals(curve.grid.size());
  for (int i = 0; i < gridpoints; ++i) {
    curve.grid[i] = 2.0 * std::numbers::pi * i / (gridpoints - 1);
  }
  numeric::parallel_for(curve.grid.size(), [&](std::size_t i) {
    const auto r = hermitian_lambda_max(block_symbol(curve.grid[i], K, blocks));
    curve.values[i] = r.lambda_max;
    residuals[i] = r.residual;
  });

  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    if (curve.values[i] > curve.values[curve.argmax]) curve.argmax = i;
    curve.max_residual = std::max(curve.max_residual, residuals[i]);
  }
  const double top = curve.values[curve.argmax];
  const double slack = 1e-12 * std::abs(top);
  curve.max_at_zero = curve.values.front() >= top - slack || curve.values.back() >= top - slack;
  return curve;
}

std::vector<FourierRow> fourier_table(int K_max, int M) {
  validate(SymbolTruncation{M, K_max});
  const auto blocks = kernel_blocks(M + 1, K_max);
  std::vector<FourierRow> rows(static_cast<std::size_t>(K_max));
  numeric::parallel_for(rows.size(), [&](std::size_t i) {
    const int K = static_cast<int>(i) + 1;
    const auto r = hermitian_lambda_max(block_symbol(0.0, K, blocks));
    if (!(r.residual < 1e-10)) {
      throw NumericalError("symbol eigenpair residual above 1e-10 at K = " + std::to_string(K),
                           r.residual);
    }
    rows[i] = {K, r.lambda_max, r.residual};
  });
  return rows;
}

double truncation_tail_estimate(int M, int K) {
  validate(SymbolTruncation{M, K});
  auto inf_norm = [K](int n) {
    double worst = 0.0;
    for (int k = 1; k <= K; ++k) {
      double row = 0.0;
      for (int l = 1; l <= K; ++l) row += std::abs(entry({n, k, 0, l}));
      worst = std::max(worst, row);
    }
    return worst;
  };
  const double last = inf_norm(M);
  const double ratio = last / inf_norm(M - 1 >= 0 ? M - 1 : 0);
  if (!(ratio < 1.0)) return std::numeric_limits<double>::infinity();
  // A_n and A_n^T both enter the symbol.
  return 2.0 * last * ratio / (1.0 - ratio);
}

}  // namespace wcsl
