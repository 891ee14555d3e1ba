#include "wcsl/cli/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "reference_tables.hpp"
#include "wcsl/bump_quadrature.hpp"
#include "wcsl/chsh.hpp"
#include "wcsl/cli/cli.hpp"
#include "wcsl/eigen_solver.hpp"
#include "wcsl/error.hpp"
#include "wcsl/io.hpp"
#include "wcsl/kernel.hpp"
#include "wcsl/numeric/integrate.hpp"
#include "wcsl/szego.hpp"
#include "wcsl/toeplitz.hpp"
#include "wcsl/wavelets.hpp"

namespace wcsl::cli {
namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g(double v) { return fmt("%.10g", v); }
std::string e(double v) { return fmt("%.2e", v); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Half a unit in the last printed digit of a value shown with `sig`
// significant figures.
double half_unit(double printed, int sig) {
  return 0.5 * std::pow(10.0, std::floor(std::log10(std::abs(printed))) - sig + 1);
}

struct Check {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (detail.tellp() > 0) detail << "; ";
    detail << (cond ? "" : "FAILED ") << what;
  }
};

CriterionResult printed_matrix() {
  Check c;
  const auto t0 = Clock::now();
  std::ostringstream out, err;
  const int status = run({"matrix", "2", "3"}, out, err);
  const double elapsed = seconds_since(t0);
  c.require(status == 0, "`matrix 2 3` exit status " + std::to_string(status));
  if (status != 0) return {1, "", false, c.detail.str() + " " + err.str()};
  std::istringstream in(out.str());
  const Eigen::MatrixXd a = io::read_matrix_csv(in);
  c.require(a.rows() == 9 && a.cols() == 9, "9x9 CSV");
  int matched = 0;
  double worst = 0.0;
  for (int i = 0; i < 81 && a.size() == 81; ++i) {
    const double p = kTableA23[static_cast<std::size_t>(i)];
    const double ratio = std::abs(a(i / 9, i % 9) - p) / half_unit(p, 3);
    worst = std::max(worst, ratio);
    if (ratio <= 1.0) ++matched;
  }
  c.require(matched == 81, std::to_string(matched) + "/81 entries round to the printed 3 figures (worst " +
                               fmt("%.2f", worst) + " half-units)");
  c.require(elapsed < 1.0, "runtime " + fmt("%.3f", elapsed) + " s < 1 s");
  return {1, "", c.ok, c.detail.str()};
}

CriterionResult diagonal_constant() {
  Check c;
  const double v = entry({0, 1, 0, 1});
  const double ref = std::log(1024.0 / 729.0);
  c.require(std::abs(v - ref) <= 1e-12, "A_(0,1),(0,1) = " + fmt("%.15f", v) + ", |diff| " + e(std::abs(v - ref)) +
                                            " <= 1e-12");
  return {2, "", c.ok, c.detail.str()};
}

CriterionResult k1_asymptote_check() {
  Check c;
  const double a = k1_asymptote();
  const double s = scalar_symbol(0.0, {50, 1});
  c.require(std::abs(a - 3.1105202) <= 5e-7, "k1_asymptote " + g(a) + " vs 3.1105202 within 5e-7");
  c.require(std::abs(s - 3.1105201) <= 2e-7, "scalar_symbol(0, M=50) " + g(s) + " vs 3.1105201 within 2e-7");
  return {3, "", c.ok, c.detail.str()};
}

CriterionResult bound_ladder() {
  Check c;
  const double ref[] = {3.12063, 3.11248, 3.11088};
  for (int n = 0; n < 3; ++n) {
    const double m = bound_M(n).M_N;
    c.require(std::abs(m - ref[n]) <= 5e-6, "M_" + std::to_string(n) + " = " + g(m) + " vs " + g(ref[n]));
  }
  const double closed = 2.0 * (3.0 - std::numbers::sqrt2) * std::numbers::ln2 + (18.0 * std::numbers::sqrt2 - 19.0) / 7.0;
  const double m0 = bound_M(0).M_N;
  c.require(std::abs(m0 - closed) <= 1e-12, "M_0 vs closed form |diff| " + e(std::abs(m0 - closed)));
  return {4, "", c.ok, c.detail.str()};
}

CriterionResult fourier_regression() {
  Check c;
  const auto t0 = Clock::now();
  const std::vector<FourierRow> rows = fourier_table(60, 50);
  const double elapsed = seconds_since(t0);
  double worst = 0.0;
  int worst_k = 0, matched = 0;
  for (const FourierRow& r : rows) {
    const double d = std::abs(r.lambda_max - kTableFourier[static_cast<std::size_t>(r.K - 1)]);
    if (d <= 5e-7) ++matched;
    if (d > worst) worst = d, worst_k = r.K;
  }
  c.require(rows.size() == 60 && matched == 60,
            std::to_string(matched) + "/60 rows within 5e-7 (worst " + e(worst) + " at K=" + std::to_string(worst_k) + ")");
  const std::pair<int, double> spots[] = {{2, 3.1330806}, {10, 3.1412391}, {60, 3.1415830}};
  for (auto [k, v] : spots) {
    const double got = rows.at(static_cast<std::size_t>(k - 1)).lambda_max;
    c.require(std::abs(got - v) <= 5e-7, "K=" + std::to_string(k) + " " + fmt("%.8f", got));
  }
  c.require(elapsed < 120.0, "runtime " + fmt("%.2f", elapsed) + " s < 120 s");
  return {5, "", c.ok, c.detail.str()};
}

CriterionResult sandwich() {
  Check c;
  int held = 0;
  double min_gap_low = 1e300, min_gap_high = 1e300;
  for (int n = 1; n <= 40; ++n) {
    const K1Bounds b = k1_bounds(n);
    const double lam = spectrum_extremes(assemble(n, 1)).lambda_max;
    // At N = 1 the lower bound is attained exactly (the top eigenvector is
    // constant), so allow a few ulps of rounding.
    const double ulps = 8.0 * std::numeric_limits<double>::epsilon() * lam;
    if (b.lower <= lam + ulps && lam <= b.upper + ulps) ++held;
    min_gap_low = std::min(min_gap_low, lam - b.lower);
    min_gap_high = std::min(min_gap_high, b.upper - lam);
  }
  c.require(held == 40, std::to_string(held) + "/40 of N=1..40 satisfy S/(N+1) <= lambda_max <= a_0 + 2 sum a_n (min margins " +
                            e(min_gap_low) + ", " + e(min_gap_high) + ")");
  return {6, "", c.ok, c.detail.str()};
}

CriterionResult monotonicity() {
  Check c;
  const int Ns[] = {2, 5, 10, 20, 40};
  const int Ks[] = {1, 2, 3, 5};
  double lam[5][4];
  double largest = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j) {
      lam[i][j] = spectrum_extremes(assemble(Ns[i], Ks[j])).lambda_max;
      largest = std::max(largest, lam[i][j]);
    }
  // Submatrix interlacing is exact; the slack only covers eigensolver rounding.
  constexpr double slack = 1e-12;
  int violations = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      for (int i2 = i; i2 < 5; ++i2)
        for (int j2 = j; j2 < 4; ++j2)
          if (lam[i][j] > lam[i2][j2] + slack) ++violations;
  c.require(violations == 0, std::to_string(violations) + " monotonicity violations over 20 grid points");
  c.require(largest < std::numbers::pi, "max lambda_max " + g(largest) + " < pi");
  return {7, "", c.ok, c.detail.str()};
}

CriterionResult chsh_end_to_end() {
  Check c;
  try {
    const ChshRun run = solve_chsh(0.9, {0, 20, 3});
    c.require(run.report.max_residual < 1e-8, "eta=0.9 on A(20,3): max residual " + e(run.report.max_residual));
  } catch (const InfeasibleError& err) {
    const SpectralResult s = spectrum_extremes(assemble(20, 3));
    c.require(false, "eta=0.9 on A(20,3) infeasible: target " + g(target(0.9)) + " > lambda_max " + g(s.lambda_max) +
                         ", largest feasible eta " + g(err.feasible_eta_max()));
    // Same construction where it is feasible, for the record.
    const ChshRun big = solve_chsh(0.9, {0, 150, 3});
    c.require(big.report.max_residual < 1e-8,
              "eta=0.9 on A(150,3): max residual " + e(big.report.max_residual) + ", correlator " + g(big.report.correlator));
  }
  const double c07 = correlator(0.7), c099 = correlator(0.99);
  // Agreement to two decimals: within one unit of the second decimal. The
  // printed 2.82 is 2.8283 truncated, so half-unit rounding cannot apply.
  c.require(std::abs(c07 - 2.66) < 0.01, "correlator(0.7) = " + g(c07) + " ~ 2.66");
  c.require(std::abs(c099 - 2.82) < 0.01, "correlator(0.99) = " + g(c099) + " ~ 2.82");
  try {
    (void)solve_chsh(0.99, {0, 40, 1});
    c.require(false, "eta=0.99 at K=1 reported infeasible");
  } catch (const InfeasibleError& err) {
    c.require(err.feasible_eta_max() < 0.99 && target(0.99) > k1_asymptote(),
              "eta=0.99 at K=1 infeasible (largest feasible eta " + g(err.feasible_eta_max()) + ")");
  }
  return {8, "", c.ok, c.detail.str()};
}

CriterionResult bump_laws() {
  Check c;
  const WaveletIndex idx[] = {{0, 0}, {2, -1}, {3, -4}};
  double worst = 0.0;
  for (const WaveletIndex& w : idx)
    for (double eps : {0.1, 0.05}) {
      const DeviationReport r = lp_deviation(w, {eps}, 1.0);
      const double expected = std::exp2(-w.n / 2.0) * eps;
      worst = std::max(worst, std::abs(r.measured - expected) / expected);
    }
  c.require(worst <= 1e-6, "||psi - sigma||_1 vs 2^{-n/2} eps over 6 cases: worst relative " + e(worst));
  const double a1 = alpha(1.0);
  c.require(std::abs(a1 - 1.0) <= 1e-10, "alpha_1 = " + fmt("%.15f", a1));
  return {9, "", c.ok, c.detail.str()};
}

CriterionResult bump_convergence() {
  Check c;
  const BumpSweep sweep = bump_sweep(0.9, {0, 200, 2}, {0.2, 0.1, 0.05, 0.025});
  std::string devs;
  bool decreasing = true;
  for (std::size_t i = 0; i < sweep.per_eps.size(); ++i) {
    devs += (i ? ", " : "") + fmt("%.4f", sweep.per_eps[i].deviation_fg);
    if (i > 0 && !(sweep.per_eps[i].deviation_fg < sweep.per_eps[i - 1].deviation_fg)) decreasing = false;
  }
  c.require(decreasing, "|<f|g> - target| strictly decreasing on A(200,2): " + devs);
  const NormalizationConstants& k = sweep.per_eps.back().constants;
  const double worst = std::max({std::abs(k.a - 1), std::abs(k.ap - 1), std::abs(k.b - 1), std::abs(k.bp - 1)});
  c.require(worst <= 0.01, "normalization constants at eps=0.025 within 0.01 of 1 (a = " + fmt("%.4f", k.a) +
                               ", worst |c - 1| " + fmt("%.4f", worst) + ")");
  return {10, "", c.ok, c.detail.str()};
}

// -iint psi_{n,-k}(x) psi_{m,-l}(y) / (x + y) by nested adaptive quadrature
// in local coordinates, graded toward the touching corner.
numeric::QuadratureResult entry_by_quadrature(const EntryIndex& ix) {
  const double sx = std::exp2(-ix.n), sy = std::exp2(-ix.m);
  auto f = [&](double t, double u) {
    return haar_mother(t) * haar_mother(u) / (sx * (t - ix.k) + sy * (u - ix.l));
  };
  std::vector<double> tb{0.5}, ub{0.5};
  if (ix.k == 1 && ix.l == 1) {
    auto gt = numeric::graded_breakpoints(1.0, 0.5, 0.5, 40);
    tb.insert(tb.end(), gt.begin(), gt.end());
    ub.insert(ub.end(), gt.begin(), gt.end());
  }
  numeric::QuadratureOptions outer{1e-12, 1e-12, 4000}, inner{1e-13, 1e-13, 4000};
  numeric::QuadratureResult r = numeric::integrate_2d(f, 0.0, 1.0, tb, 0.0, 1.0, ub, outer, inner);
  r.value *= -std::exp2(-(ix.n + ix.m) / 2.0);
  r.error *= std::exp2(-(ix.n + ix.m) / 2.0);
  return r;
}

CriterionResult oracle_equivalence() {
  Check c;
  std::mt19937 rng(20240601u);
  std::uniform_int_distribution<int> scale(0, 5), shift(1, 5);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const EntryIndex ix{scale(rng), shift(rng), scale(rng), shift(rng)};
    const numeric::QuadratureResult q = entry_by_quadrature(ix);
    worst = std::max(worst, std::abs(q.value - entry(ix)));
  }
  c.require(worst <= 1e-8, "20 random entries: closed form vs adaptive double quadrature, worst |diff| " + e(worst));
  const Eigen::MatrixXd a = assemble(2, 3).dense;
  const double dense = extremal_eigenpairs(a).lambda_max;
  const double power = power_iteration(a).lambda;
  c.require(std::abs(dense - power) <= 1e-9, "A(2,3) lambda_max dense " + g(dense) + " vs power iteration |diff| " +
                                                 e(std::abs(dense - power)));
  return {11, "", c.ok, c.detail.str()};
}

const char* title(int id) {
  switch (id) {
    case 1: return "A(2,3) printed matrix regression";
    case 2: return "diagonal constant ln(1024/729)";
    case 3: return "K=1 asymptote";
    case 4: return "bound ladder M_0, M_1, M_2";
    case 5: return "lambda_max(F_K(0)) table regression";
    case 6: return "K=1 sandwich";
    case 7: return "monotonicity and ceiling";
    case 8: return "CHSH end to end";
    case 9: return "bumpification laws";
    case 10: return "bump convergence";
    case 11: return "oracle equivalence";
    default: return "unknown";
  }
}

}  // namespace

CriterionResult run_criterion(int id) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = printed_matrix(); break;
      case 2: r = diagonal_constant(); break;
      case 3: r = k1_asymptote_check(); break;
      case 4: r = bound_ladder(); break;
      case 5: r = fourier_regression(); break;
      case 6: r = sandwich(); break;
      case 7: r = monotonicity(); break;
      case 8: r = chsh_end_to_end(); break;
      case 9: r = bump_laws(); break;
      case 10: r = bump_convergence(); break;
      case 11: r = oracle_equivalence(); break;
      default: r = {id, "", false, "no such criterion"};
    }
  } catch (const Error& err) {
    r = {id, "", false, std::string("raised ") + err.kind() + ": " + err.what()};
  } catch (const std::exception& err) {
    r = {id, "", false, std::string("raised: ") + err.what()};
  }
  r.id = id;
  r.title = title(id);
  r.seconds = seconds_since(t0);
  return r;
}

int run_acceptance(const std::vector<int>& ids, std::ostream& out) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= kCriterionCount; ++i) todo.push_back(i);
  int failures = 0;
  for (int id : todo) {
    const CriterionResult r = run_criterion(id);
    if (!r.passed) ++failures;
    out << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << " (" << r.title << "): " << r.detail << " ["
        << fmt("%.2f", r.seconds) << " s]" << std::endl;
  }
  out << "acceptance: " << (todo.size() - static_cast<std::size_t>(failures)) << "/" << todo.size() << " passed"
      << std::endl;
  return failures;
}

}  // namespace wcsl::cli
