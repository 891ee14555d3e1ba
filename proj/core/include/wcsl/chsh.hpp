#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wcsl/eigen_solver.hpp"
#include "wcsl/toeplitz.hpp"
#include "wcsl/wavelets.hpp"

namespace wcsl {

// Wavelet scales N0..N1 and K translations per scale.
struct Resolution {
  int N0 = 0;
  int N1 = 1;
  int K = 1;

  int scales() const noexcept { return N1 - N0 + 1; }
  int dimension() const noexcept { return scales() * K; }
};

void validate(const Resolution& res);

// Alice's functions live on x < 0 and Bob's on x > 0.
enum class Side { alice, bob };

// f_j = sum c_j(n,k) psi_{n,k}. Slot i = (n - N0) K + j with
// k = -(j+1) for Alice and k = j for Bob, j = 0..K-1.
struct TestFunction {
  Side side = Side::alice;
  Resolution res;
  std::vector<double> comp1;
  std::vector<double> comp2;

  WaveletIndex index(std::size_t slot) const;
  const std::vector<double>& component(int j) const { return j == 1 ? comp1 : comp2; }

  // Sharp (Haar) and smoothed reconstructions of component j in {1, 2}.
  double evaluate(int j, double x) const;
  double evaluate_bumped(int j, const TaperParams& params, double x) const;
};

inline constexpr double kC = 0.41421356237309504880;  // sqrt2 - 1

// 2 pi eta / (1 + eta^2), eta in (sqrt2 - 1, 1).
double target(double eta);

// 4 sqrt2 eta / (1 + eta^2), eta in (sqrt2 - 1, 1].
double correlator(double eta);

// 2 sqrt2 eta / (1 + eta^2): magnitude of the four required inner products.
double inner_product_magnitude(double eta);

// Largest eta with target(eta) <= lambda_max. Throws AnomalyError when
// lambda_max >= pi.
double feasible_eta_max(const SpectralResult& spec);

struct SphereSolution {
  Eigen::VectorXd y;
  double theta = 0.0;
};

SphereSolution solve_on_sphere(const SpectralResult& spec, double eta);

struct ChshSolution {
  double eta = 0.0;
  double c = kC;
  Resolution res;
  Eigen::VectorXd y;
  double theta = 0.0;
  TestFunction f, fp, g, gp;
  double correlator = 0.0;
};

ChshSolution build_coefficients(const Eigen::VectorXd& y, const Resolution& res, double eta = 0.0);

// <u|v> through the closed-form kernel entries. Only the cross-side term
// survives between Alice and Bob; a same-side pair contributes its
// coefficient overlap.
std::complex<double> bilinear_form(const TestFunction& u, const TestFunction& v,
                                   const Eigen::MatrixXd& a);

struct ResidualReport {
  std::array<double, 4> norms{};                    // <f|f>, <f'|f'>, <g|g>, <g'|g'>
  std::array<std::complex<double>, 4> products{};   // <f|g>, <f'|g>, <f|g'>, <f'|g'>
  std::vector<double> residuals;                    // 8 deviations from the targets
  double max_residual = 0.0;
  double correlator = 0.0;                          // |i(<f|g> + <f|g'> + <f'|g> - <f'|g'>)|
};

ResidualReport verify_system(const ChshSolution& sol, const KernelMatrix& matrix);

// Full pipeline on A(N1 - N0, K).
struct ChshRun {
  KernelMatrix matrix;
  SpectralResult spectrum;
  ChshSolution solution;
  ResidualReport report;
};

ChshRun solve_chsh(double eta, const Resolution& res);

}  // namespace wcsl
