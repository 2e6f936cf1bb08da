#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lab/fit.hpp"
#include "propagator.hpp"

namespace zkd::lab {

struct KernelQuery {
  int j = 1;
  int k = 1;
  int l = 2;
  double t = 0.0;
  double t_prime = 0.0;
  double x = 0.0;
  double y = 0.0;
  DispersionSymbol symbol;

  // j, k >= 1 and l >= j + k.
  void Validate() const;
  // 2^-l < |t - t'| <= 2^{1-l}.
  bool InTimeWindow() const;
};

struct KernelSumResult {
  std::complex<double> value;
  std::int64_t terms = 0;
  std::optional<std::string> warning;
};

// K_{k+j}(t, t', x, y) = chi(t) chi(t') sum_{m,n} psi1^2(m/2^j) psi1^2(n/2^k)
//   exp(i [m x + n y + omega(m, n) (t - t')])
// with chi the indicator of [-2^{-(j+k)}, 2^{-(j+k)}]. The separation window
// for l is not applied here; see KernelSumLocalized.
KernelSumResult KernelSum(const KernelQuery& query);

// K^l: KernelSum times the indicator of the l-window on |t - t'|.
KernelSumResult KernelSumLocalized(const KernelQuery& query);

// The l-range used by the Weyl step of the proof: lo = max(j + k, 2j) and
// hi = max(lo, 2j + 2 | floor(5j/2) | 3j) for alpha = 1 | 2 | 3.
std::pair<int, int> KernelLWindow(int alpha, int j, int k);

enum class KernelLRule {
  kAdmissible,  // l uniform in [j + k, j + k + l_span]
  kProofWindow  // l from KernelLWindow
};

enum class KernelScanMode {
  kDecay,   // random admissible (t, t', x, y, l), measured = max |K| 2^-l
  kCounting // t = t', x = y = 0, measured = |K|
};

struct KernelScanConfig {
  DispersionSymbol symbol;
  int j_min = 4, j_max = 8;
  int k_min = 4, k_max = 8;
  int samples_per_cell = 128;
  double epsilon = 0.05;
  KernelScanMode mode = KernelScanMode::kDecay;
  KernelLRule l_rule = KernelLRule::kAdmissible;
  int l_span = 2;
  std::uint64_t seed = 1;
  int workers = 1;

  void Validate() const;
};

ScanReport KernelDecayScan(const KernelScanConfig& config);

}  // namespace zkd::lab
