#include "wcsl/bump_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wcsl/error.hpp"
#include "wcsl/numeric/compensated_sum.hpp"
#include "wcsl/numeric/parallel.hpp"

namespace wcsl {
namespace {

using numeric::QuadratureOptions;
using numeric::QuadratureResult;

// Mother function on [0, 1): Haar for epsilon == 0, bump otherwise.
double mother(double epsilon, double t) {
  return epsilon == 0.0 ? haar_mother(t) : bump_mother(TaperParams{epsilon}, t);
}

double wavelet_value(const WaveletIndex& w, double epsilon, double x) {
  return epsilon == 0.0 ? eval_haar(w, x) : eval_bump_wavelet(w, TaperParams{epsilon}, x);
}

std::vector<double> mother_breakpoints(double epsilon) {
  if (epsilon == 0.0) return {0.0, 0.5, 1.0};
  return bump_mother_breakpoints(epsilon);
}

void check_epsilon(double epsilon) {
  if (epsilon != 0.0) validate(TaperParams{epsilon});
}

bool overlaps(const WaveletIndex& a, const WaveletIndex& b) {
  return a.left() < b.right() && b.left() < a.right();
}

}  // namespace

QuadratureResult pair_kernel_integral(const WaveletIndex& alice, const WaveletIndex& bob,
                                      double epsilon, const BumpQuadratureOptions& options) {
  check_epsilon(epsilon);
  if (alice.k >= 0 || bob.k < 0) {
    throw DomainError("pair kernel needs an Alice wavelet on x < 0 and a Bob wavelet on x > 0");
  }
  const int shift = std::min(alice.n, bob.n);
  const int n = alice.n - shift;
  const int m = bob.n - shift;
  const double ka = alice.k;
  const double kb = bob.k;
  const double prefactor = std::exp2(-0.5 * (n + m));

  // x = 2^-n (t + ka) <= 0 and y = 2^-m (u + kb) >= 0, so x - y never cancels.
  auto integrand = [=](double t, double u) {
    const double st = mother(epsilon, t);
    if (st == 0.0) return 0.0;
    const double su = mother(epsilon, u);
    if (su == 0.0) return 0.0;
    const double denom = std::ldexp(t + ka, -n) - std::ldexp(u + kb, -m);
    return st * su / denom;
  };

  std::vector<double> t_breaks = mother_breakpoints(epsilon);
  std::vector<double> u_breaks = t_breaks;
  // The kernel is singular only where both supports touch x = y = 0.
  if (alice.k == -1 && bob.k == 0) {
    const int levels = options.grading_levels;
    for (double p : numeric::graded_breakpoints(1.0, 0.5, options.grading_ratio, levels)) {
      t_breaks.push_back(p);
    }
    for (double p : numeric::graded_breakpoints(0.0, 0.5, options.grading_ratio, levels)) {
      u_breaks.push_back(p);
    }
  }

  QuadratureOptions outer;
  outer.abs_tol = options.pair_tolerance / prefactor;
  outer.rel_tol = 1e-12;
  QuadratureOptions inner = outer;
  inner.abs_tol = 0.1 * outer.abs_tol;
  QuadratureResult r = numeric::integrate_2d(integrand, 0.0, 1.0, t_breaks, 0.0, 1.0, u_breaks, outer, inner);
  r.value *= prefactor;
  r.error *= prefactor;
  return r;
}

QuadratureResult pair_overlap_integral(const WaveletIndex& a, const WaveletIndex& b, double epsilon,
                                       const BumpQuadratureOptions& options) {
  check_epsilon(epsilon);
  QuadratureResult r;
  r.converged = true;
  if (!overlaps(a, b)) return r;
  // Integrate in the local coordinate of the finer wavelet.
  const WaveletIndex& coarse = a.n <= b.n ? a : b;
  const WaveletIndex& fine = a.n <= b.n ? b : a;
  const int shift = coarse.n;
  const WaveletIndex c{coarse.n - shift, coarse.k};
  const WaveletIndex f{fine.n - shift, fine.k};
  const double scale = std::exp2(-0.5 * f.n);

  auto integrand = [&](double u) {
    const double s = mother(epsilon, u);
    if (s == 0.0) return 0.0;
    return s * wavelet_value(c, epsilon, std::ldexp(u + f.k, -f.n));
  };
  std::vector<double> cuts = mother_breakpoints(epsilon);
  for (double p : mother_breakpoints(epsilon)) {
    cuts.push_back(std::ldexp(std::ldexp(p + c.k, -c.n), f.n) - f.k);
  }
  QuadratureOptions opts;
  opts.abs_tol = options.pair_tolerance / scale;
  opts.rel_tol = 1e-13;
  r = numeric::integrate(integrand, 0.0, 1.0, cuts, opts);
  r.value *= scale;
  r.error *= scale;
  return r;
}

PairIntegralCache::PairIntegralCache(double epsilon, BumpQuadratureOptions options)
    : epsilon_(epsilon), options_(options) {
  check_epsilon(epsilon);
}

std::size_t PairIntegralCache::size() const {
  std::lock_guard lock(mutex_);
  return kernel_.size() + overlap_.size();
}

QuadratureResult PairIntegralCache::kernel(const WaveletIndex& alice, const WaveletIndex& bob) {
  const Key key{bob.n - alice.n, alice.k, bob.k};
  {
    std::lock_guard lock(mutex_);
    if (auto it = kernel_.find(key); it != kernel_.end()) return it->second;
  }
  const auto r = pair_kernel_integral(alice, bob, epsilon_, options_);
  std::lock_guard lock(mutex_);
  kernel_.emplace(key, r);
  return r;
}

QuadratureResult PairIntegralCache::overlap(const WaveletIndex& a, const WaveletIndex& b) {
  if (!overlaps(a, b)) return {0.0, 0.0, 0, true};
  const bool a_first = a.n < b.n || (a.n == b.n && a.k <= b.k);
  const WaveletIndex& p = a_first ? a : b;
  const WaveletIndex& q = a_first ? b : a;
  const Key key{q.n - p.n, p.k, q.k};
  {
    std::lock_guard lock(mutex_);
    if (auto it = overlap_.find(key); it != overlap_.end()) return it->second;
  }
  const auto r = pair_overlap_integral(p, q, epsilon_, options_);
  std::lock_guard lock(mutex_);
  overlap_.emplace(key, r);
  return r;
}

void PairIntegralCache::prefetch_kernel(const Resolution& res) {
  std::vector<std::pair<WaveletIndex, WaveletIndex>> todo;
  {
    std::lock_guard lock(mutex_);
    for (int d = -(res.N1 - res.N0); d <= res.N1 - res.N0; ++d) {
      for (int ka = -res.K; ka <= -1; ++ka) {
        for (int kb = 0; kb < res.K; ++kb) {
          if (kernel_.count({d, ka, kb}) == 0) {
            todo.push_back({WaveletIndex{std::max(0, -d), ka}, WaveletIndex{std::max(0, d), kb}});
          }
        }
      }
    }
  }
  numeric::parallel_for(todo.size(), [&](std::size_t i) { kernel(todo[i].first, todo[i].second); });
}

namespace {

void require_same_layout(const TestFunction& u, const TestFunction& v) {
  if (u.res.N0 != v.res.N0 || u.res.N1 != v.res.N1 || u.res.K != v.res.K ||
      u.comp1.size() != v.comp1.size()) {
    throw DomainError("test functions are expanded over different resolutions");
  }
}

void check_symmetric_product(const TestFunction& u, const TestFunction& v) {
  const std::size_t d = u.comp1.size();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double sij = u.comp1[i] * v.comp1[j] - u.comp2[i] * v.comp2[j];
      const double sji = u.comp1[j] * v.comp1[i] - u.comp2[j] * v.comp2[i];
      if (std::abs(sij - sji) > 1e-13 * std::max(std::abs(sij) + std::abs(sji), 1e-300)) {
        throw DomainError("same-side kernel term needs a symmetric coefficient product");
      }
    }
  }
}

}  // namespace

SmoothInnerProduct inner_product_smooth(const TestFunction& u, const TestFunction& v,
                                        PairIntegralCache& cache) {
  require_same_layout(u, v);
  const std::size_t d = u.comp1.size();
  SmoothInnerProduct out;
  numeric::CompensatedSum sum;
  double error = 0.0;

  if (u.side == v.side) {
    // I1 from the Gram matrix of the smoothed wavelets. I2 is odd under
    // x <-> y for a symmetric coefficient product and drops out.
    check_symmetric_product(u, v);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double c = u.comp1[i] * v.comp1[j] + u.comp2[i] * v.comp2[j];
        if (c == 0.0) continue;
        const auto g = cache.overlap(u.index(i), v.index(j));
        if (!g.converged) throw AccuracyError("overlap quadrature did not converge", g.error);
        sum += c * g.value;
        error += std::abs(c) * g.error;
      }
    }
    out.value = {sum.value(), 0.0};
  } else {
    const TestFunction& alice = u.side == Side::alice ? u : v;
    const TestFunction& bob = u.side == Side::alice ? v : u;
    cache.prefetch_kernel(u.res);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const double c = alice.comp1[i] * bob.comp1[j] - alice.comp2[i] * bob.comp2[j];
        if (c == 0.0) continue;
        const auto w = cache.kernel(alice.index(i), bob.index(j));
        if (!w.converged) throw AccuracyError("kernel quadrature did not converge", w.error);
        sum += c * w.value;
        error += std::abs(c) * w.error;
      }
    }
    const double sign = u.side == Side::alice ? 1.0 : -1.0;
    out.value = {0.0, -sign * sum.value() / std::numbers::pi};
    error /= std::numbers::pi;
  }
  out.error = error;
  if (out.error > cache.options().accuracy_limit) {
    throw AccuracyError("inner product error estimate " + std::to_string(out.error) +
                            " exceeds the accuracy limit",
                        out.error);
  }
  return out;
}

SmoothInnerProduct inner_product_smooth(const TestFunction& u, const TestFunction& v, double epsilon,
                                        const BumpQuadratureOptions& options) {
  PairIntegralCache cache(epsilon, options);
  return inner_product_smooth(u, v, cache);
}

NormalizationConstants normalization_constants(const ChshSolution& sol, PairIntegralCache& cache) {
  NormalizationConstants n;
  n.a = 1.0 / inner_product_smooth(sol.f, sol.f, cache).value.real();
  n.ap = 1.0 / inner_product_smooth(sol.fp, sol.fp, cache).value.real();
  n.b = 1.0 / inner_product_smooth(sol.g, sol.g, cache).value.real();
  n.bp = 1.0 / inner_product_smooth(sol.gp, sol.gp, cache).value.real();
  return n;
}

NormalizationConstants normalization_constants(const ChshSolution& sol, double epsilon,
                                               const BumpQuadratureOptions& options) {
  PairIntegralCache cache(epsilon, options);
  return normalization_constants(sol, cache);
}

std::vector<double> default_epsilons() { return {0.2, 0.1, 0.05, 0.025, 0.0125}; }

BumpSweep bump_sweep(double eta, const Resolution& res, const std::vector<double>& epsilons,
                     const BumpQuadratureOptions& options) {
  if (epsilons.empty()) throw DomainError("bump sweep needs at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    validate(TaperParams{epsilons[i]});
    if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
      throw DomainError("bump sweep epsilons must be strictly decreasing");
    }
  }
  const ChshRun run = solve_chsh(eta, res);
  const ChshSolution& sol = run.solution;
  const std::complex<double> goal{0.0, -inner_product_magnitude(eta)};

  BumpSweep sweep;
  sweep.eta = eta;
  sweep.resolution = res;
  sweep.epsilons = epsilons;
  sweep.lambda_max = run.spectrum.lambda_max;
  for (double eps : epsilons) {
    PairIntegralCache cache(eps, options);
    BumpRecord rec;
    rec.epsilon = eps;
    rec.constants = normalization_constants(sol, cache);
    const auto fg = inner_product_smooth(sol.f, sol.g, cache);
    const auto fpg = inner_product_smooth(sol.fp, sol.g, cache);
    const auto fgp = inner_product_smooth(sol.f, sol.gp, cache);
    const auto fpgp = inner_product_smooth(sol.fp, sol.gp, cache);
    rec.ip_fg = fg.value;
    rec.ip_fpg = fpg.value;
    rec.ip_fgp = fgp.value;
    rec.ip_fpgp = fpgp.value;
    rec.error = std::max({fg.error, fpg.error, fgp.error, fpgp.error});

    // a = 1/<f|f>, so sqrt(a) f has unit norm.
    const auto& k = rec.constants;
    rec.rs_fg = std::sqrt(k.a * k.b) * rec.ip_fg;
    rec.rs_fpg = std::sqrt(k.ap * k.b) * rec.ip_fpg;
    rec.rs_fgp = std::sqrt(k.a * k.bp) * rec.ip_fgp;
    rec.rs_fpgp = std::sqrt(k.ap * k.bp) * rec.ip_fpgp;
    rec.deviation_fg = std::abs(rec.ip_fg - goal);
    const std::complex<double> c =
        std::complex<double>{0.0, 1.0} * (rec.rs_fg + rec.rs_fgp + rec.rs_fpg - rec.rs_fpgp);
    rec.correlator_num = std::abs(c);
    sweep.per_eps.push_back(rec);
  }
  return sweep;
}

}  // namespace wcsl
