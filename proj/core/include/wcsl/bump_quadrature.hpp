#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "wcsl/chsh.hpp"
#include "wcsl/numeric/integrate.hpp"
#include "wcsl/wavelets.hpp"

namespace wcsl {

struct BumpQuadratureOptions {
  double pair_tolerance = 1e-10;   // absolute, per wavelet pair
  double accuracy_limit = 1e-7;    // AccuracyError above this total estimate
  double grading_ratio = 0.5;
  int grading_levels = 12;
};

// iint s_a(x) s_b(y) / (x - y) dx dy for an Alice wavelet a (x < 0) and a
// Bob wavelet b (y > 0); s is the bump wavelet, or the Haar wavelet when
// epsilon == 0.
numeric::QuadratureResult pair_kernel_integral(const WaveletIndex& alice, const WaveletIndex& bob,
                                               double epsilon,
                                               const BumpQuadratureOptions& options = {});

// integral s_a(x) s_b(x) dx for two wavelets (any sides).
numeric::QuadratureResult pair_overlap_integral(const WaveletIndex& a, const WaveletIndex& b,
                                                double epsilon,
                                                const BumpQuadratureOptions& options = {});

// Cache of pair integrals for one epsilon. Both integrals are invariant
// under a common scale shift, so they are keyed by (m - n, k, l).
class PairIntegralCache {
 public:
  PairIntegralCache(double epsilon, BumpQuadratureOptions options = {});

  numeric::QuadratureResult kernel(const WaveletIndex& alice, const WaveletIndex& bob);
  numeric::QuadratureResult overlap(const WaveletIndex& a, const WaveletIndex& b);

  double epsilon() const noexcept { return epsilon_; }
  const BumpQuadratureOptions& options() const noexcept { return options_; }
  std::size_t size() const;

  // Fill the kernel cache for every cross pair of a resolution in parallel.
  void prefetch_kernel(const Resolution& res);

 private:
  using Key = std::tuple<int, int, int>;
  double epsilon_;
  BumpQuadratureOptions options_;
  mutable std::mutex mutex_;
  std::map<Key, numeric::QuadratureResult> kernel_;
  std::map<Key, numeric::QuadratureResult> overlap_;
};

struct SmoothInnerProduct {
  std::complex<double> value;
  double error = 0.0;
};

// <u|v> = I1 + I2 for the bumpified functions.
SmoothInnerProduct inner_product_smooth(const TestFunction& u, const TestFunction& v,
                                        PairIntegralCache& cache);
SmoothInnerProduct inner_product_smooth(const TestFunction& u, const TestFunction& v, double epsilon,
                                        const BumpQuadratureOptions& options = {});

struct NormalizationConstants {
  double a = 1.0, ap = 1.0, b = 1.0, bp = 1.0;
};

// Reciprocals of <f|f>, <f'|f'>, <g|g>, <g'|g'> for the bumpified functions.
NormalizationConstants normalization_constants(const ChshSolution& sol, PairIntegralCache& cache);
NormalizationConstants normalization_constants(const ChshSolution& sol, double epsilon,
                                               const BumpQuadratureOptions& options = {});

struct BumpRecord {
  double epsilon = 0.0;
  NormalizationConstants constants;
  std::complex<double> ip_fg, ip_fpg, ip_fgp, ip_fpgp;      // raw bumpified
  std::complex<double> rs_fg, rs_fpg, rs_fgp, rs_fpgp;      // rescaled to unit norms
  double deviation_fg = 0.0;   // |ip_fg - (-i sqrt2 eta / (1 + eta^2))|
  double correlator_num = 0.0; // from the rescaled inner products
  double error = 0.0;          // largest quadrature error estimate
};

struct BumpSweep {
  double eta = 0.0;
  Resolution resolution;
  std::vector<double> epsilons;
  std::vector<BumpRecord> per_eps;
  double lambda_max = 0.0;
};

std::vector<double> default_epsilons();

BumpSweep bump_sweep(double eta, const Resolution& res, const std::vector<double>& epsilons,
                     const BumpQuadratureOptions& options = {});

}  // namespace wcsl
