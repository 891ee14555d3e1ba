#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "wcsl/error.hpp"
#include "wcsl/kernel.hpp"

using namespace wcsl;

namespace {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<250>>;

// s ln|s|, whose mixed second difference integrates 1/(x + y) over a rectangle.
Big G(const Big& s) { return s == 0 ? Big(0) : s * log(abs(s)); }

// -iint psi_{n,-k}(x) psi_{m,-l}(y) / (x + y) dx dy summed exactly over the
// four constant-sign rectangles, in 250-digit arithmetic.
Big entry_oracle(int n, int k, int m, int l) {
  const Big hx = ldexp(Big(1), -n - 1), hy = ldexp(Big(1), -m - 1);
  const Big x0 = -k * 2 * hx, y0 = -l * 2 * hy;
  Big total = 0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Big a = x0 + i * hx, b = a + hx, c = y0 + j * hy, d = c + hy;
      const Big rect = G(b + d) - G(a + d) - G(b + c) + G(a + c);
      total += ((i + j) % 2 == 0 ? 1 : -1) * rect;
    }
  }
  return -total * sqrt(ldexp(Big(1), n + m));
}

double oracle(int n, int k, int m, int l) { return static_cast<double>(entry_oracle(n, k, m, l)); }

Big e_oracle(int j) {
  const Big z = ldexp(Big(1), -j);
  return ((1 + z) * log1p(z) - z) / z;
}

}  // namespace

TEST(Kernel, DiagonalConstant) {
  EXPECT_NEAR(entry({0, 1, 0, 1}), std::log(1024.0 / 729.0), 1e-15);
  EXPECT_NEAR(oracle(0, 1, 0, 1), std::log(1024.0 / 729.0), 1e-15);
}

TEST(Kernel, PrintedEntries) {
  EXPECT_NEAR(entry({0, 1, 0, 2}), 0.0179, 5e-5);
  EXPECT_NEAR(entry({0, 1, 2, 1}), 0.274, 5e-4);
}

TEST(Kernel, ClosedFormAgreesWithHighPrecisionOracle) {
  double worst = 0.0;
  for (int n = 0; n <= 6; ++n)
    for (int m = 0; m <= 6; ++m)
      for (int k = 1; k <= 6; ++k)
        for (int l = 1; l <= 6; ++l) {
          const double ref = oracle(n, k, m, l);
          worst = std::max(worst, std::abs(entry({n, k, m, l}) - ref) / ref);
        }
  EXPECT_LT(worst, 1e-12);
}

TEST(Kernel, LargeScaleGapsStayAccurate) {
  for (int d : {30, 52, 53, 56, 60, 100, 150, 200}) {
    for (int k = 1; k <= 5; ++k) {
      for (int l = 1; l <= 5; ++l) {
        const double ref = oracle(0, k, d, l);
        const double got = entry({0, k, d, l});
        ASSERT_TRUE(std::isfinite(got)) << d << ' ' << k << ' ' << l;
        EXPECT_NEAR(got, ref, 1e-12 * ref) << d << ' ' << k << ' ' << l;
        const double swapped = entry({d, l, 0, k});
        EXPECT_NEAR(swapped, ref, 1e-12 * ref);
      }
    }
  }
}

TEST(Kernel, PositivityShiftInvarianceSymmetry) {
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= 12; ++m)
      for (int k = 1; k <= 8; ++k)
        for (int l = 1; l <= 8; ++l) {
          const double v = entry({n, k, m, l});
          ASSERT_GT(v, 0.0);
          EXPECT_NEAR(entry({n + 1, k, m + 1, l}), v, 1e-12 * v);
          EXPECT_NEAR(entry({m, l, n, k}), v, 1e-12 * v);
        }
}

TEST(Kernel, QuadratureOfDefiningIntegral) {
  // Inner integral in y is elementary; integrate the outer x numerically.
  // A_{(0,2),(1,1)}: psi_{0,-2} on [-2,-1), psi_{1,-1} on [-1/2, 0).
  auto inner = [](double x) {
    auto seg = [&](double c, double d) { return std::log(std::abs(x + d)) - std::log(std::abs(x + c)); };
    return std::sqrt(2.0) * (seg(-0.5, -0.25) - seg(-0.25, 0.0));
  };
  auto f = [&](double x) { return (x < -1.5 ? 1.0 : -1.0) * inner(x); };
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double q = -(GK::integrate(f, -2.0, -1.5, 15, 1e-15) + GK::integrate(f, -1.5, -1.0, 15, 1e-15));
  EXPECT_NEAR(entry({0, 2, 1, 1}), q, 1e-12);
}

TEST(Kernel, RejectsNonPositiveTranslations) {
  EXPECT_THROW(entry({0, 0, 0, 1}), DomainError);
  EXPECT_THROW(entry({0, 1, 0, -3}), DomainError);
}

TEST(EvalJ, ValuesAndDomain) {
  EXPECT_NEAR(eval_J(-2.0), std::log(9.0 / 8.0), 1e-15);
  EXPECT_NEAR(eval_J(-1.5), std::log(4.0 / 3.0), 1e-15);
  EXPECT_GT(eval_J(-1e8), 0.0);
  EXPECT_LT(eval_J(-1e8), 1e-16);
  EXPECT_THROW(eval_J(-1.0), DomainError);
  EXPECT_THROW(eval_J(0.5), DomainError);
}

TEST(ASeq, MatchesEntryAndOracle) {
  EXPECT_NEAR(a_seq(0), std::log(1024.0 / 729.0), 1e-15);
  EXPECT_DOUBLE_EQ(a_seq(5), entry({0, 1, 5, 1}));
  for (int n : {1, 2, 10, 28, 29, 30, 31, 32, 40, 60}) {
    const double ref = oracle(0, 1, n, 1);
    EXPECT_NEAR(a_seq(n), ref, 1e-13 * ref) << n;
  }
  EXPECT_THROW(a_seq(-1), DomainError);
}

TEST(ASeq, PositiveAndStrictlyDecreasing) {
  double prev = a_seq(0);
  for (int n = 1; n <= 60; ++n) {
    const double a = a_seq(n);
    EXPECT_GT(a, 0.0);
    EXPECT_LT(a, prev);
    prev = a;
  }
}

TEST(Iota, ClosedFormsAndMajorant) {
  EXPECT_NEAR(iota(1), std::sqrt(0.5) * (3.0 * std::log(1.5) - 1.0), 1e-15);
  EXPECT_NEAR(iota(1), 0.15302, 1e-5);  // printed value is truncated
  for (int n = 1; n <= 60; ++n) {
    const double ref = static_cast<double>(e_oracle(n) * pow(Big(2), Big(-n) / 2));
    EXPECT_NEAR(iota(n), ref, 1e-14 * ref);
    // The ratio tends to 1, so the strict inequality is lost to rounding.
    EXPECT_LE(iota(n), kappa(n));
  }
  EXPECT_NEAR(iota(40) * std::exp2(60.0), 0.5, 1e-11);
}

TEST(Kappa, Values) {
  EXPECT_DOUBLE_EQ(kappa(1), std::exp2(-2.5));
  EXPECT_DOUBLE_EQ(kappa(2), 0.0625);
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  EXPECT_NEAR(GK::integrate([](double x) { return std::exp2(-1.5) * (1.0 - x); }, 0.0, 1.0), kappa(1), 1e-15);
}

TEST(PartialSum, TwoPathsAgree) {
  for (int N : {1, 2, 5, 10, 20, 40}) {
    const auto p = partial_sum(N);
    EXPECT_NEAR(p.direct_sum, p.recomposed, 1e-13) << N;
    EXPECT_DOUBLE_EQ(p.alpha_const, alpha_const());
  }
}

TEST(PartialSum, CorrectionTermsSignsAndDecay) {
  // beta_N is negative; gamma_N is positive with leading term (sqrt2 - 1) 2^(-N/2).
  double prev_b = 2.0, prev_g = 1.0;
  for (int N = 1; N <= 40; ++N) {
    const auto p = partial_sum(N);
    EXPECT_LT(p.beta_N, 0.0);
    EXPECT_GT(p.gamma_N, 0.0);
    EXPECT_LT(std::abs(p.beta_N), prev_b);
    EXPECT_LT(p.gamma_N, prev_g);
    EXPECT_LE(p.gamma_N, std::exp2(-N / 2.0));
    prev_b = std::abs(p.beta_N);
    prev_g = p.gamma_N;
  }
  EXPECT_NEAR(partial_sum(40).gamma_N * std::exp2(20.0), std::sqrt(2.0) - 1.0, 1e-6);
}

TEST(Asymptote, ValueAndComposition) {
  const double a = k1_asymptote();
  EXPECT_NEAR(a, 3.1105202, 5e-7);
  EXPECT_LT(a, std::numbers::pi);
  const double composed =
      std::log(1024.0 / 729.0) + 2.0 * alpha_const() + 2.0 * (3.0 - 2.0 * std::sqrt(2.0)) * iota_series();
  EXPECT_NEAR(a, composed, 1e-15);
  // a_0 + 2 sum a_n converges to the same limit.
  double s = a_seq(0);
  for (int n = 1; n <= 200; ++n) s += 2.0 * a_seq(n);
  EXPECT_NEAR(s, a, 1e-12);
}

TEST(BoundLadder, PrintedValuesAndMonotonicity) {
  EXPECT_NEAR(bound_M(0).M_N, 3.12063, 5e-6);
  EXPECT_NEAR(bound_M(1).M_N, 3.11248, 5e-6);
  EXPECT_NEAR(bound_M(2).M_N, 3.11088, 5e-6);
  EXPECT_NEAR(bound_M(0).M_N, m0_closed_form(), 1e-14);
  const double a = k1_asymptote();
  double prev = bound_M(0).M_N;
  for (int N = 1; N <= 10; ++N) {
    const double m = bound_M(N).M_N;
    EXPECT_LT(m, prev);
    EXPECT_GT(m, a);
    prev = m;
  }
  EXPECT_NEAR(bound_M(40).M_N, a, 1e-13);
  EXPECT_THROW(bound_M(-1), DomainError);
}
