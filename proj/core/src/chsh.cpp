#include "wcsl/chsh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wcsl/error.hpp"
#include "wcsl/numeric/compensated_sum.hpp"

namespace wcsl {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEtaMin = std::numbers::sqrt2 - 1.0;

std::string describe(double v) { return std::to_string(v); }

template <typename Eval>
double reconstruct(const TestFunction& fn, int j, double x, Eval&& wavelet) {
  const auto& coeffs = fn.component(j);
  const int K = fn.res.K;
  numeric::CompensatedSum sum;
  for (int n = fn.res.N0; n <= fn.res.N1; ++n) {
    const double k = std::floor(std::ldexp(x, n));
    if (k < -K - 1.0 || k > K + 1.0) continue;
    const int slot_k = fn.side == Side::alice ? static_cast<int>(-k) - 1 : static_cast<int>(k);
    if (slot_k < 0 || slot_k >= K) continue;
    const std::size_t slot = static_cast<std::size_t>(n - fn.res.N0) * K + slot_k;
    if (coeffs[slot] != 0.0) sum += coeffs[slot] * wavelet(fn.index(slot), x);
  }
  return sum.value();
}

void require_same_layout(const TestFunction& u, const TestFunction& v) {
  if (u.res.N0 != v.res.N0 || u.res.N1 != v.res.N1 || u.res.K != v.res.K ||
      u.comp1.size() != v.comp1.size()) {
    throw DomainError("test functions are expanded over different resolutions");
  }
}

}  // namespace

void validate(const Resolution& res) {
  std::string problems;
  if (!(res.N1 > res.N0)) problems += "N1 must exceed N0; ";
  if (res.K < 1) problems += "K must be >= 1; ";
  if (!problems.empty()) throw DomainError("invalid resolution: " + problems);
}

WaveletIndex TestFunction::index(std::size_t slot) const {
  const int n = res.N0 + static_cast<int>(slot / res.K);
  const int j = static_cast<int>(slot % res.K);
  return {n, side == Side::alice ? -(j + 1) : j};
}

double TestFunction::evaluate(int j, double x) const {
  return reconstruct(*this, j, x, [](const WaveletIndex& w, double t) { return eval_haar(w, t); });
}

double TestFunction::evaluate_bumped(int j, const TaperParams& params, double x) const {
  validate(params);
  return reconstruct(*this, j, x, [&params](const WaveletIndex& w, double t) {
    return eval_bump_wavelet(w, params, t);
  });
}

double target(double eta) {
  if (!(eta > kEtaMin && eta < 1.0)) {
    throw DomainError("eta must lie in the open interval (sqrt2 - 1, 1), got " + describe(eta));
  }
  return 2.0 * kPi * eta / (1.0 + eta * eta);
}

double correlator(double eta) {
  if (!(eta > kEtaMin && eta <= 1.0)) {
    throw DomainError("eta must lie in (sqrt2 - 1, 1], got " + describe(eta));
  }
  return 4.0 * std::numbers::sqrt2 * eta / (1.0 + eta * eta);
}

double inner_product_magnitude(double eta) {
  return std::numbers::sqrt2 * eta / (1.0 + eta * eta);
}

double feasible_eta_max(const SpectralResult& spec) {
  const double lambda = spec.lambda_max;
  if (!(lambda < kPi)) {
    throw AnomalyError("lambda_max = " + describe(lambda) + " is not below pi", lambda);
  }
  if (lambda <= 0.0) return 0.0;
  // Smaller root of lambda eta^2 - 2 pi eta + lambda = 0, rationalized.
  return lambda / (kPi + std::sqrt((kPi - lambda) * (kPi + lambda)));
}

SphereSolution solve_on_sphere(const SpectralResult& spec, double eta) {
  const double tau = target(eta);
  const double hi = spec.lambda_max;
  const double lo = spec.lambda_min;
  if (tau > hi || tau < lo) {
    const double eta_star = feasible_eta_max(spec);
    throw InfeasibleError("target " + describe(tau) + " lies outside [lambda_min, lambda_max] = [" +
                              describe(lo) + ", " + describe(hi) + "]; largest feasible eta is " +
                              describe(eta_star),
                          eta_star);
  }
  SphereSolution s;
  if (hi == lo) {
    s.y = spec.v_max;
    return s;
  }
  const double ratio = std::clamp((tau - lo) / (hi - lo), 0.0, 1.0);
  s.theta = std::acos(std::sqrt(ratio));
  s.y = std::cos(s.theta) * spec.v_max + std::sin(s.theta) * spec.v_min;
  return s;
}

ChshSolution build_coefficients(const Eigen::VectorXd& y, const Resolution& res, double eta) {
  validate(res);
  if (y.size() != res.dimension()) {
    throw DomainError("vector length " + std::to_string(y.size()) + " does not match dimension " +
                      std::to_string(res.dimension()));
  }
  if (std::abs(y.norm() - 1.0) > 1e-10) throw DomainError("y must be a unit vector");

  const double c = kC;
  const Eigen::VectorXd x = y / std::sqrt(1.0 + c * c);
  const std::vector<double> f1(x.data(), x.data() + x.size());
  std::vector<double> f2(f1.size()), cf1(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) {
    f2[i] = -c * f1[i];
    cf1[i] = c * f1[i];
  }

  ChshSolution sol;
  sol.eta = eta;
  sol.c = c;
  sol.res = res;
  sol.y = y;
  sol.f = {Side::alice, res, f1, f2};
  sol.fp = {Side::alice, res, cf1, f1};  // f1' = -f2, f2' = f1
  // g_j(n, k) = f_j(n, -k-1): Bob's slot j holds Alice's slot j.
  sol.g = {Side::bob, res, f1, f2};
  sol.gp = {Side::bob, res, cf1, f1};    // g1' = -g2, g2' = g1
  if (eta > 0.0) sol.correlator = correlator(eta);
  return sol;
}

std::complex<double> bilinear_form(const TestFunction& u, const TestFunction& v,
                                   const Eigen::MatrixXd& a) {
  require_same_layout(u, v);
  const Eigen::Index d = static_cast<Eigen::Index>(u.comp1.size());
  if (u.side == v.side) {
    numeric::CompensatedSum overlap;
    double asym = 0.0, scale = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) {
      overlap += u.comp1[i] * v.comp1[i] + u.comp2[i] * v.comp2[i];
      for (Eigen::Index j = 0; j < i; ++j) {
        const double sij = u.comp1[i] * v.comp1[j] - u.comp2[i] * v.comp2[j];
        const double sji = u.comp1[j] * v.comp1[i] - u.comp2[j] * v.comp2[i];
        asym = std::max(asym, std::abs(sij - sji));
        scale = std::max(scale, std::abs(sij) + std::abs(sji));
      }
    }
    // With a symmetric coefficient product the 1/(x - y) term is odd under
    // x <-> y and vanishes.
    if (asym > 1e-13 * std::max(scale, 1e-300)) {
      throw DomainError("same-side kernel term needs a symmetric coefficient product");
    }
    return {overlap.value(), 0.0};
  }

  if (a.rows() != d || a.cols() != d) {
    throw DomainError("kernel matrix is " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + ", coefficients need " + std::to_string(d));
  }
  const TestFunction& alice = u.side == Side::alice ? u : v;
  const TestFunction& bob = u.side == Side::alice ? v : u;
  numeric::CompensatedSum sum;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      sum += a(i, j) * (alice.comp1[i] * bob.comp1[j] - alice.comp2[i] * bob.comp2[j]);
    }
  }
  // Swapping the roles flips the sign of 1/(x - y).
  const double sign = u.side == Side::alice ? 1.0 : -1.0;
  return {0.0, -sign * sum.value() / kPi};
}

ResidualReport verify_system(const ChshSolution& sol, const KernelMatrix& matrix) {
  if (matrix.N != sol.res.N1 - sol.res.N0 || matrix.K != sol.res.K) {
    throw DomainError("kernel matrix A(" + std::to_string(matrix.N) + "," +
                      std::to_string(matrix.K) + ") does not match the coefficient resolution");
  }
  const auto& a = matrix.dense;
  ResidualReport r;
  const TestFunction* selves[4] = {&sol.f, &sol.fp, &sol.g, &sol.gp};
  for (int i = 0; i < 4; ++i) r.norms[i] = bilinear_form(*selves[i], *selves[i], a).real();
  r.products[0] = bilinear_form(sol.f, sol.g, a);
  r.products[1] = bilinear_form(sol.fp, sol.g, a);
  r.products[2] = bilinear_form(sol.f, sol.gp, a);
  r.products[3] = bilinear_form(sol.fp, sol.gp, a);

  const std::complex<double> t{0.0, -inner_product_magnitude(sol.eta)};
  for (double n : r.norms) r.residuals.push_back(std::abs(n - 1.0));
  r.residuals.push_back(std::abs(r.products[0] - t));
  r.residuals.push_back(std::abs(r.products[1] - t));
  r.residuals.push_back(std::abs(r.products[2] - t));
  r.residuals.push_back(std::abs(r.products[3] + t));
  r.max_residual = *std::max_element(r.residuals.begin(), r.residuals.end());
  const std::complex<double> c =
      std::complex<double>{0.0, 1.0} * (r.products[0] + r.products[2] + r.products[1] - r.products[3]);
  r.correlator = std::abs(c);
  return r;
}

ChshRun solve_chsh(double eta, const Resolution& res) {
  target(eta);
  validate(res);
  ChshRun run;
  run.matrix = assemble(res.N1 - res.N0, res.K);
  run.spectrum = spectrum_extremes(run.matrix);
  const auto sphere = solve_on_sphere(run.spectrum, eta);
  run.solution = build_coefficients(sphere.y, res, eta);
  run.solution.theta = sphere.theta;
  run.report = verify_system(run.solution, run.matrix);
  return run;
}

}  // namespace wcsl
