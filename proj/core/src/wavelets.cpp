#include "wcsl/wavelets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcsl/error.hpp"
#include "wcsl/numeric/integrate.hpp"

namespace wcsl {
namespace {

constexpr double kExpClamp = 745.0;

// 1 / (1 + e^z) with z clamped; saturates to 0 or 1.
double logistic_of(double z) noexcept {
  z = std::clamp(z, -kExpClamp, kExpClamp);
  return 1.0 / (1.0 + std::exp(z));
}

// Rising edge of the taper at x in (0, eps).
double rising_edge(double eps, double x) noexcept {
  return logistic_of(eps * (2.0 * x - eps) / (x * (x - eps)));
}

}  // namespace

double WaveletIndex::left() const noexcept { return std::ldexp(static_cast<double>(k), -n); }
double WaveletIndex::right() const noexcept { return std::ldexp(static_cast<double>(k) + 1.0, -n); }
double WaveletIndex::width() const noexcept { return std::ldexp(1.0, -n); }
double WaveletIndex::amplitude() const noexcept {
  return (n % 2 == 0) ? std::ldexp(1.0, n / 2) : std::ldexp(std::sqrt(2.0), (n - 1) / 2);
}

void validate(const TaperParams& params) {
  if (!(params.epsilon > 0.0 && params.epsilon < 0.5)) {
    throw DomainError("taper epsilon must lie in (0, 1/2), got " + std::to_string(params.epsilon));
  }
}

double haar_mother(double t) noexcept {
  if (t < 0.0 || t >= 1.0) return 0.0;
  return t < 0.5 ? 1.0 : -1.0;
}

double eval_haar(const WaveletIndex& index, double x) noexcept {
  const double t = std::ldexp(x, index.n) - index.k;
  const double h = haar_mother(t);
  return h == 0.0 ? 0.0 : h * index.amplitude();
}

double eval_planck(const TaperParams& params, double x) {
  validate(params);
  const double eps = params.epsilon;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  if (x < eps) return rising_edge(eps, x);
  if (x > 1.0 - eps) return rising_edge(eps, 1.0 - x);
  return 1.0;
}

double bump_mother(const TaperParams& params, double t) {
  if (t < 0.0 || t >= 1.0) return 0.0;
  return t < 0.5 ? eval_planck(params, 2.0 * t) : -eval_planck(params, 2.0 * t - 1.0);
}

double eval_bump_wavelet(const WaveletIndex& index, const TaperParams& params, double x) {
  const double t = std::ldexp(x, index.n) - index.k;
  const double s = bump_mother(params, t);
  return s == 0.0 ? 0.0 : s * index.amplitude();
}

double alpha(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("alpha requires 1 <= p < infinity, got " + std::to_string(p));
  }
  auto integrand = [p](double y) {
    if (y <= 0.0 || y >= 1.0) return y <= 0.0 ? 1.0 : 0.0;
    // 1 - s_0(y) = 1 / (1 + e^{-z})
    const double z = (2.0 * y - 1.0) / (y * (y - 1.0));
    return std::pow(logistic_of(-z), p);
  };
  const double mid[] = {0.5};
  numeric::QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  opts.rel_tol = 1e-14;
  const auto r = numeric::integrate(integrand, 0.0, 1.0, mid, opts);
  return 2.0 * r.value;
}

std::vector<double> bump_mother_breakpoints(double epsilon) {
  const double h = 0.5 * epsilon;
  return {0.0, h, 0.5 - h, 0.5, 0.5 + h, 1.0 - h, 1.0};
}

double lp_deviation_law(const WaveletIndex& index, double epsilon, double p) {
  return std::exp2(index.n * p / 2.0 - index.n) * alpha(p) * epsilon;
}

DeviationReport lp_deviation(const WaveletIndex& index, const TaperParams& params, double p) {
  validate(params);
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("lp_deviation requires 1 <= p < infinity, got " + std::to_string(p));
  }
  auto integrand = [&](double x) {
    return std::pow(std::abs(eval_haar(index, x) - eval_bump_wavelet(index, params, x)), p);
  };
  std::vector<double> cuts;
  for (double t : bump_mother_breakpoints(params.epsilon)) {
    cuts.push_back(std::ldexp(t + index.k, -index.n));
  }
  numeric::QuadratureOptions opts;
  opts.abs_tol = 1e-15 * std::max(1.0, std::pow(index.amplitude(), p) * index.width());
  opts.rel_tol = 1e-13;
  const auto r = numeric::integrate(integrand, index.left(), index.right(), cuts, opts);

  DeviationReport report;
  report.p = p;
  report.index = index;
  report.epsilon = params.epsilon;
  report.measured = r.value;
  report.error = r.error;
  report.predicted = lp_deviation_law(index, params.epsilon, p);
  return report;
}

}  // namespace wcsl
