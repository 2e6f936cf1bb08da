#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "propagator.hpp"

namespace zkd::lab {

struct OscillatoryParams {
  double y_shift = 0.0;  // y'
  double t = 0.0;
  double m = 0.0;
  double beta = 1.0;
  DispersionSign sign = DispersionSign::kPlus;
  int k = 1;
  int quadrature_n = 1024;  // starting node count per branch
};

struct OscillatoryResult {
  std::complex<double> value;
  // 2^{(1-beta)k/2} / |m t|^{1/2}; empty when m t = 0.
  std::optional<double> bound;
  bool converged = false;
  double last_change = 0.0;  // |I_2n - I_n| at the final doubling
  int nodes = 0;             // per branch, final
};

// int psi1^2(eta / 2^k) exp(i (y' eta + sign t m |eta|^{1+beta})) d eta over
// both branches of the support, by composite Gauss-Legendre with node
// doubling. Use OscillatoryBound() to get the bound-undefined error.
OscillatoryResult OscillatoryIntegral(const OscillatoryParams& params);

// Throws kBoundUndefined when m t = 0.
double OscillatoryBound(const OscillatoryParams& params);

struct OscillatoryDraw {
  int j = 1;
  int k = 1;
  int l = 2;
  OscillatoryParams params;
  OscillatoryResult result;
  double ratio = 0.0;  // |I| / bound
};

// Random admissible parameters: j, k in [1, 8], l in [j+k, j+k+4],
// |t| in (2^-l, 2^{1-l}], |m| in [2^{j-1}, 2^{j+1}], beta in {1/4, 1/2, 1},
// y' in [-2 pi, 2 pi]. Each draw has its own seeded stream.
std::vector<OscillatoryDraw> OscillatoryScan(int draws, std::uint64_t seed, int workers = 1,
                                             int quadrature_n = 1024);

struct VdcProblem {
  double a = 0.0;
  double b = 1.0;
  int p = 2;
  double lambda = 1.0;
  std::function<double(double)> phase;
  std::function<double(double)> phase_derivative;  // the p-th derivative
  std::function<double(double)> amplitude;
  std::function<double(double)> amplitude_derivative;
  int panels = 256;  // 16-point Gauss panels, doubled until stable
};

struct VdcResult {
  double lhs = 0.0;             // |int e^{i phi} psi|
  double rhs = 0.0;             // lambda^{-1/p} (sup|psi| + ||psi'||_1)
  double rhs_printed = 0.0;     // same with lambda^{+1/p}
  double amplitude_sup = 0.0;
  double amplitude_variation = 0.0;
  int panels = 0;
};

// p >= 2, or p = 1 when the caller also knows phi' is monotone. The
// certificate |phi^{(p)}| >= lambda is checked at every quadrature node and
// at both endpoints; a miss throws kCertificateViolation.
VdcResult VanDerCorputCheck(const VdcProblem& problem);

// exp(1 - 1/(1 - x^2)) on (-1, 1), 1 at the origin.
double UnitBump(double x);
double UnitBumpDerivative(double x);

struct VdcScanRow {
  double t = 0.0;
  VdcResult result;
  double scaled_lhs = 0.0;  // lhs * sqrt(t)
};

// phi(x) = t x^2 on [-1, 1] with the unit bump, t = 2^i for i in [i_min, i_max].
std::vector<VdcScanRow> VanDerCorputScan(int i_min, int i_max);

}  // namespace zkd::lab
