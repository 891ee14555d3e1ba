#pragma once

namespace wcsl {

// Index of A_{(n,k),(m,l)} = -iint psi_{n,-k}(x) psi_{m,-l}(y) / (x + y) dx dy.
struct EntryIndex {
  int n = 0;
  int k = 1;
  int m = 0;
  int l = 1;
};

struct PartialSumDecomposition {
  int N = 1;
  double direct_sum = 0.0;  // sum_{n=1}^N a_n
  double alpha_const = 0.0;
  double beta_N = 0.0;
  double gamma_N = 0.0;
  double iota_sum = 0.0;    // sum_{n=1}^N iota_n
  double recomposed = 0.0;
};

struct BoundLadder {
  int N = 0;
  double M_N = 0.0;
};

// J(x) = ln((1/2 + x)^2 / (x (1 + x))) for x < -1.
double eval_J(double x);

double entry(const EntryIndex& idx);

// a_n = A_{(0,1),(n,1)}.
double a_seq(int n);

double iota(int n);
double kappa(int n);

// sqrt2 - 1 - (2 + sqrt2) ln2 + 3 ln3
double alpha_const() noexcept;

PartialSumDecomposition partial_sum(int N);

// Sum of iota_n for n >= 1, truncated once a term drops below 1e-14.
double iota_series();

double k1_asymptote();

BoundLadder bound_M(int N);

// 2 (3 - sqrt2) ln2 + (18 sqrt2 - 19) / 7
double m0_closed_form() noexcept;

}  // namespace wcsl
