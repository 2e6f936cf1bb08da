#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace zkd::lab {

// h(m) = coeffs[d] m^d + ... + coeffs[0], summed over m = 1..N.
struct WeylInstance {
  std::vector<double> coeffs;  // coeffs[i] multiplies m^i; degree = size - 1
  std::int64_t n = 1;
  double delta = 0.01;
  std::int64_t lambda = 1;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  void Validate() const;
};

struct RationalApprox {
  std::int64_t a = 0;
  std::int64_t q = 1;
};

// Fractional part of h(m) in [0, 1). Each monomial product coeff * m^i is
// split into exact pieces, so the result is accurate to a few ulps of 1 even
// when h(m) itself is huge.
double FracPolynomial(const std::vector<double>& coeffs, std::int64_t m);

// sum_{m=1}^{N} exp(2 pi i h(m)) with compensated accumulation.
std::complex<double> WeylSum(const WeylInstance& instance);

// (a, q) with 1 <= q <= lambda, gcd(|a|, q) = 1 and |r - a/q| <= 1/(lambda q).
// Continued-fraction convergents, checked, with an exhaustive fallback.
// |r| must be below 2^62.
RationalApprox DirichletApprox(double r, std::int64_t lambda);

// N^{1+delta} (1/q + 1/N + q/N^d)^{1/2^{d-1}}
double WeylBound(double n, double q, int d, double delta);

enum class LambdaRule {
  kDyadic,  // 32 N^2 for cubics (2^{2j+5} with N ~ 2^j), N^{d-1} otherwise
  kPowerN,  // N^{d-1}
  kFixed,
};

std::int64_t ResolveLambda(LambdaRule rule, int degree, std::int64_t n, std::int64_t fixed);

struct WeylScanConfig {
  int degree = 3;
  std::int64_t n_min = 16;
  std::int64_t n_max = 2048;
  int trials = 10000;
  double delta = 0.01;
  LambdaRule rule = LambdaRule::kDyadic;
  std::int64_t fixed_lambda = 64;
  // > 0: leading coefficient runs over p / leading_grid, p = 0..grid-1, at
  // N = n_max, and `trials` is ignored.
  int leading_grid = 0;
  std::uint64_t seed = 1;
  int workers = 1;

  void Validate() const;
};

struct WeylScanRow {
  int trial = 0;
  std::int64_t n = 0;
  double leading = 0.0;
  std::int64_t lambda = 0;
  RationalApprox approx;
  double dirichlet_error = 0.0;  // |r - a/q| * lambda * q, <= 1 by construction
  double abs_sum = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct WeylScanReport {
  std::vector<WeylScanRow> rows;
  double max_ratio = 0.0;
  double max_dirichlet_error = 0.0;
  bool trivial_bound_ok = true;  // |S| <= N in every trial
  std::map<int, double> max_ratio_by_octave;  // floor(log2 N) -> max ratio
  std::uint64_t seed = 0;
};

WeylScanReport WeylScan(const WeylScanConfig& config);

}  // namespace zkd::lab
