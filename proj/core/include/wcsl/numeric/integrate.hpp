#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wcsl::numeric {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;       // estimated absolute error
  long evaluations = 0;
  bool converged = false;   // error <= max(abs_tol, rel_tol * |value|)
};

struct QuadratureOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-12;
  int max_subdivisions = 4000;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod (7/15 point) integration of `f` over [a, b].
///
/// The interval is first split at every point of `breakpoints` lying strictly
/// inside (a, b); panels are then bisected globally, worst error first, until
/// the summed error estimate meets the tolerance or the subdivision budget is
/// spent. Non-convergence is reported through `converged`, not thrown.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints = {},
                           const QuadratureOptions& options = {});

/// Iterated 2-D integration over [ax, bx] x [ay, by]: an adaptive outer rule
/// in x whose integrand is an adaptive inner integral in y. The reported
/// error is the outer estimate plus the integrated inner estimates.
QuadratureResult integrate_2d(const std::function<double(double, double)>& f,
                              double ax, double bx, std::span<const double> x_breaks,
                              double ay, double by, std::span<const double> y_breaks,
                              const QuadratureOptions& outer = {},
                              const QuadratureOptions& inner = {});

/// Breakpoints grading geometrically toward `corner` from `far`: the points
/// corner + (far - corner) * ratio^j for j = 1..levels.
std::vector<double> graded_breakpoints(double corner, double far, double ratio, int levels);

}  // namespace wcsl::numeric
