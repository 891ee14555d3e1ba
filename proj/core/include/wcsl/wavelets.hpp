#pragma once

#include <vector>

namespace wcsl {

// Haar wavelet psi_{n,k}(x) = 2^{n/2} psi(2^n x - k), supported on the
// half-open interval [k 2^-n, (k+1) 2^-n).
struct WaveletIndex {
  int n = 0;
  int k = 0;

  double left() const noexcept;
  double right() const noexcept;
  double width() const noexcept;
  double amplitude() const noexcept;  // 2^{n/2}
  bool operator==(const WaveletIndex&) const = default;
};

// Planck-taper transition width. Valid for 0 < epsilon < 1/2.
struct TaperParams {
  double epsilon = 0.1;
};

void validate(const TaperParams& params);

struct DeviationReport {
  double p = 1.0;
  WaveletIndex index;
  double epsilon = 0.0;
  double measured = 0.0;   // ||psi - sigma||_p^p by quadrature
  double predicted = 0.0;  // closed scaling law
  double error = 0.0;      // quadrature error estimate of `measured`
};

double eval_haar(const WaveletIndex& index, double x) noexcept;

// Mother Haar wavelet on [0, 1).
double haar_mother(double t) noexcept;

// Planck-taper window s^eps. The exponent is clamped to +-745 so the
// transition saturates to exactly 0 or 1 instead of overflowing.
double eval_planck(const TaperParams& params, double x);

// Mother bumpified wavelet sigma^eps on [0, 1): +s(2t) then -s(2t - 1).
double bump_mother(const TaperParams& params, double t);

double eval_bump_wavelet(const WaveletIndex& index, const TaperParams& params, double x);

// alpha_p = 2 * integral_0^1 (1 - s_0(y))^p dy, for p >= 1.
double alpha(double p);

// Points of [0, 1] where the mother bump wavelet changes regime:
// 0, eps/2, 1/2 - eps/2, 1/2, 1/2 + eps/2, 1 - eps/2, 1.
std::vector<double> bump_mother_breakpoints(double epsilon);

DeviationReport lp_deviation(const WaveletIndex& index, const TaperParams& params, double p);

// 2^{n p / 2 - n} alpha_p eps.
double lp_deviation_law(const WaveletIndex& index, double epsilon, double p);

}  // namespace wcsl
