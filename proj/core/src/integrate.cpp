#include "wcsl/numeric/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "wcsl/numeric/compensated_sum.hpp"

namespace wcsl::numeric {
namespace {

// Kronrod abscissae (positive half, descending) and weights; the Gauss
// 7-point rule uses the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  std::array<double, 7> lo{}, hi{};
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    lo[j] = f(center - dx);
    hi[j] = f(center + dx);
    kronrod += kWgk[j] * (lo[j] + hi[j]);
    if (j % 2 == 1) gauss += kWg[j / 2] * (lo[j] + hi[j]);
  }
  // QUADPACK-style error scaling: resasc measures the variation of f about
  // the panel mean, and the raw |K - G| difference is sharpened by ^1.5.
  const double mean = 0.5 * kronrod;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(lo[j] - mean) + std::abs(hi[j] - mean));
  }
  kronrod *= half;
  gauss *= half;
  resasc *= std::abs(half);
  double error = std::abs(kronrod - gauss);
  if (resasc != 0.0 && error != 0.0) {
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  }
  return {a, b, kronrod, error};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b,
                           std::span<const double> breakpoints,
                           const QuadratureOptions& options) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total_error = 0.0;
  CompensatedSum total_value;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    result.evaluations += 15;
    total_error += p.error;
    total_value += p.value;
    panels.push(p);
  }

  auto tolerance = [&](double value) {
    return std::max(options.abs_tol, options.rel_tol * std::abs(value));
  };

  int subdivisions = 0;
  while (total_error > tolerance(total_value.value()) && subdivisions < options.max_subdivisions) {
    Panel worst = panels.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panels that can no longer be split in floating point stay as they are.
    if (!(mid > worst.a && mid < worst.b)) break;
    panels.pop();
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    result.evaluations += 30;
    total_error += left.error + right.error - worst.error;
    total_value += left.value + right.value - worst.value;
    panels.push(left);
    panels.push(right);
    ++subdivisions;
  }

  // Re-sum from the final panel set; the running totals drift slightly.
  CompensatedSum value;
  double error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = sign * value.value();
  result.error = error;
  result.converged = error <= tolerance(result.value);
  return result;
}

QuadratureResult integrate_2d(const std::function<double(double, double)>& f,
                              double ax, double bx, std::span<const double> x_breaks,
                              double ay, double by, std::span<const double> y_breaks,
                              const QuadratureOptions& outer, const QuadratureOptions& inner) {
  double worst_inner = 0.0;
  bool inner_ok = true;
  long evaluations = 0;
  auto row = [&](double x) {
    QuadratureResult r = integrate([&](double y) { return f(x, y); }, ay, by, y_breaks, inner);
    worst_inner = std::max(worst_inner, r.error);
    inner_ok = inner_ok && r.converged;
    evaluations += r.evaluations;
    return r.value;
  };
  QuadratureResult result = integrate(row, ax, bx, x_breaks, outer);
  result.error += std::abs(bx - ax) * worst_inner;
  result.evaluations = evaluations;
  result.converged = result.converged && inner_ok;
  return result;
}

std::vector<double> graded_breakpoints(double corner, double far, double ratio, int levels) {
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(std::max(levels, 0)));
  double scale = 1.0;
  for (int j = 1; j <= levels; ++j) {
    scale *= ratio;
    points.push_back(corner + (far - corner) * scale);
  }
  return points;
}

}  // namespace wcsl::numeric
