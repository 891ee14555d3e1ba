#pragma once

#include <Eigen/Dense>

namespace wcsl {

struct SpectralResult {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  Eigen::VectorXd v_max;
  Eigen::VectorXd v_min;
  double residual_max = 0.0;  // ||A v - lambda v||_2
  double residual_min = 0.0;
  double norm = 0.0;          // ||A||_2 = max(|lambda_max|, |lambda_min|)
  bool iterative = false;     // true when the Lanczos path was used
};

struct EigenOptions {
  // Dense tridiagonalization + QR up to this dimension, Lanczos above.
  Eigen::Index dense_threshold = 2000;
  // Residual certificate: ||A v - lambda v|| < certificate * ||A||.
  double certificate = 1e-9;
  int max_lanczos_steps = 0;  // 0 means the matrix dimension
};

// Extremal eigenpairs of a symmetric matrix with residual certificates.
// Eigenvector signs are fixed so the first component with |v_i| > 1e-12
// is positive. Throws NumericalError if the certificate is not met.
SpectralResult extremal_eigenpairs(const Eigen::MatrixXd& a, const EigenOptions& options = {});

// Lanczos with full reorthogonalization; exposed so tests can force it on
// small matrices.
SpectralResult lanczos_extremal(const Eigen::MatrixXd& a, const EigenOptions& options = {});

struct PowerIterationResult {
  double lambda = 0.0;
  Eigen::VectorXd v;
  int iterations = 0;
  double residual = 0.0;
};

// Plain power iteration with a Rayleigh-quotient estimate. Used as an
// independent check of the dominant eigenvalue.
PowerIterationResult power_iteration(const Eigen::MatrixXd& a, double tolerance = 1e-13,
                                     int max_iterations = 100000);

void normalize_sign(Eigen::VectorXd& v) noexcept;

}  // namespace wcsl
