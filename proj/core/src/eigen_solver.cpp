#include "wcsl/eigen_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "wcsl/error.hpp"

namespace wcsl {
namespace {

void certify(const Eigen::MatrixXd& a, SpectralResult& r, double certificate) {
  normalize_sign(r.v_max);
  normalize_sign(r.v_min);
  r.residual_max = (a * r.v_max - r.lambda_max * r.v_max).norm();
  r.residual_min = (a * r.v_min - r.lambda_min * r.v_min).norm();
  r.norm = std::max(std::abs(r.lambda_max), std::abs(r.lambda_min));
  const double bound = certificate * std::max(r.norm, std::numeric_limits<double>::min());
  const double worst = std::max(r.residual_max, r.residual_min);
  if (!(worst < bound) && worst > 0.0) {
    throw NumericalError("eigenpair residual " + std::to_string(worst) +
                             " exceeds certificate " + std::to_string(bound),
                         worst);
  }
}

void require_square(const Eigen::MatrixXd& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DomainError("eigensolver needs a non-empty square matrix");
  }
}

}  // namespace

void normalize_sign(Eigen::VectorXd& v) noexcept {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

SpectralResult extremal_eigenpairs(const Eigen::MatrixXd& a, const EigenOptions& options) {
  require_square(a);
  if (a.rows() > options.dense_threshold) return lanczos_extremal(a, options);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw NumericalError("symmetric QR iteration did not converge", std::nan(""));
  }
  const Eigen::Index n = a.rows();
  SpectralResult r;
  r.lambda_min = es.eigenvalues()[0];
  r.lambda_max = es.eigenvalues()[n - 1];
  r.v_min = es.eigenvectors().col(0);
  r.v_max = es.eigenvectors().col(n - 1);
  certify(a, r, options.certificate);
  return r;
}

SpectralResult lanczos_extremal(const Eigen::MatrixXd& a, const EigenOptions& options) {
  require_square(a);
  const Eigen::Index n = a.rows();
  const Eigen::Index max_steps =
      options.max_lanczos_steps > 0 ? std::min<Eigen::Index>(options.max_lanczos_steps, n) : n;

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = 1.0 + unif(rng);

  Eigen::MatrixXd q(n, max_steps);
  std::vector<double> alpha, beta;
  q.col(0) = start.normalized();
  const double scale = a.cwiseAbs().rowwise().sum().maxCoeff();  // ||A||_inf >= ||A||_2

  SpectralResult best;
  double last_residual = std::nan("");
  for (Eigen::Index j = 0; j < max_steps; ++j) {
    Eigen::VectorXd w = a * q.col(j);
    alpha.push_back(q.col(j).dot(w));
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) {
      w -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    }
    const double b = w.norm();

    const Eigen::Index m = j + 1;
    const bool invariant = b <= 1e-14 * scale;
    const bool check = invariant || m == max_steps || m % 10 == 0;
    if (check) {
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        t(i, i) = alpha[i];
        if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      const double est_max = std::abs(b * es.eigenvectors()(m - 1, m - 1));
      const double est_min = std::abs(b * es.eigenvectors()(m - 1, 0));
      last_residual = std::max(est_max, est_min);
      const double goal = 0.1 * options.certificate * scale;
      if (invariant || m == max_steps || last_residual < goal) {
        best.lambda_max = es.eigenvalues()[m - 1];
        best.lambda_min = es.eigenvalues()[0];
        best.v_max = (q.leftCols(m) * es.eigenvectors().col(m - 1)).normalized();
        best.v_min = (q.leftCols(m) * es.eigenvectors().col(0)).normalized();
        best.iterative = true;
        if (invariant && m < n && last_residual >= goal) {
          throw NumericalError("Lanczos broke down before the extremes converged", last_residual);
        }
        certify(a, best, options.certificate);
        return best;
      }
    }
    if (j + 1 < max_steps) {
      beta.push_back(b);
      q.col(j + 1) = w / b;
    }
  }
  throw NumericalError("Lanczos iteration cap reached", last_residual);
}

PowerIterationResult power_iteration(const Eigen::MatrixXd& a, double tolerance,
                                     int max_iterations) {
  require_square(a);
  PowerIterationResult r;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows()).normalized();
  for (int it = 1; it <= max_iterations; ++it) {
    Eigen::VectorXd w = a * v;
    const double lambda = v.dot(w);
    r.residual = (w - lambda * v).norm();
    r.lambda = lambda;
    r.iterations = it;
    if (r.residual <= tolerance * std::abs(lambda)) break;
    const double norm = w.norm();
    if (norm == 0.0) break;
    v = w / norm;
  }
  if (r.residual > tolerance * std::abs(r.lambda)) {
    throw NumericalError("power iteration did not converge", r.residual);
  }
  normalize_sign(v);
  r.v = v;
  return r;
}

}  // namespace wcsl
