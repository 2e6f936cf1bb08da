#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "lab/bump.hpp"
#include "lab/fit.hpp"
#include "lab/kernel.hpp"
#include "lab/oscillatory.hpp"
#include "lab/quadrature.hpp"
#include "lab/strichartz.hpp"
#include "spectral_ops.hpp"

namespace zkd::lab {
namespace {

TEST(Bump, PlateauSupportAndEvenness) {
  EXPECT_EQ(Psi1(1.0), 1.0);
  EXPECT_EQ(Psi1(0.5), 1.0);
  EXPECT_EQ(Psi1(2.0), 1.0);
  EXPECT_EQ(Psi1(5.0), 0.0);
  EXPECT_EQ(Psi1(0.25), 0.0);
  EXPECT_EQ(Psi1(0.1), 0.0);
  EXPECT_EQ(Psi1(4.0), 0.0);
  const double v = Psi1(0.3);
  EXPECT_GT(v, 0.0);
  EXPECT_LT(v, 1.0);
  EXPECT_EQ(Psi1(0.3), Psi1(-0.3));
  for (double r = -5.0; r <= 5.0; r += 0.01) {
    EXPECT_GE(Psi1(r), 0.0);
    EXPECT_LE(Psi1(r), 1.0);
  }
}

TEST(Bump, DerivativeMatchesDifferences) {
  for (double r : {0.3, 0.4, 0.45, 2.5, 3.0, 3.7, -0.35, -3.1}) {
    const double h = 1e-6;
    const double fd = (Psi1(r + h) - Psi1(r - h)) / (2 * h);
    EXPECT_NEAR(Psi1Derivative(r), fd, 1e-6);
  }
}

// Centered differences of order 1..4 across every knot stay bounded as h
// shrinks: no jump in any of the first four derivatives.
TEST(Bump, FiniteDifferencesHaveNoJumps) {
  auto diff = [](int order, double r, double h) {
    static const double c[5][5] = {{0, 0, 1, 0, 0},
                                   {0, -0.5, 0, 0.5, 0},
                                   {0, 1, -2, 1, 0},
                                   {-0.5, 1, 0, -1, 0.5},
                                   {1, -4, 6, -4, 1}};
    double acc = 0;
    for (int i = 0; i < 5; ++i) acc += c[order][i] * Psi1(r + (i - 2) * h);
    return acc / std::pow(h, order);
  };
  for (double knot : {0.25, 0.5, 2.0, 4.0}) {
    for (int order = 1; order <= 4; ++order) {
      double prev = std::abs(diff(order, knot, 1e-2));
      for (double h : {1e-3, 1e-4}) {
        const double cur = std::abs(diff(order, knot, h));
        EXPECT_LT(cur, 1e3 * (1.0 + prev)) << "knot " << knot << " order " << order;
        prev = cur;
      }
    }
  }
}

TEST(Quadrature, GaussRuleIntegratesPolynomials) {
  const auto& rule = GaussLegendre(16);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], 30);
  EXPECT_NEAR(acc, 2.0 / 31.0, 1e-15);
}

double PsiSquaredIntegral() {
  double acc = 0.0;
  CompositeGauss(0.25, 4.0, 4096, 16, [&](double r, double w) { acc += w * Psi1(r) * Psi1(r); });
  return 2.0 * acc;  // both signs
}

TEST(Oscillatory, PhaseFreeIsDilation) {
  OscillatoryParams p;
  p.k = 5;
  const auto r = OscillatoryIntegral(p);
  EXPECT_NEAR(r.value.real(), 32.0 * PsiSquaredIntegral(), 1e-9);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
  EXPECT_FALSE(r.bound.has_value());
  EXPECT_TRUE(r.converged);
  try {
    OscillatoryBound(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBoundUndefined);
  }
}

TEST(Oscillatory, EvenInShiftAndRealWithoutDispersion) {
  OscillatoryParams p;
  p.k = 4;
  p.y_shift = 1.3;
  auto a = OscillatoryIntegral(p);
  EXPECT_NEAR(a.value.imag(), 0.0, 1e-12);
  p.t = 0.01;
  p.m = 5;
  a = OscillatoryIntegral(p);
  p.y_shift = -1.3;
  const auto b = OscillatoryIntegral(p);
  EXPECT_NEAR(std::abs(a.value - b.value), 0.0, 1e-9);
}

TEST(Oscillatory, ReferenceCaseWithinBound) {
  OscillatoryParams p;
  p.k = 6;
  p.beta = 1.0;
  p.m = 64;
  p.t = std::ldexp(1.0, -12);
  const auto r = OscillatoryIntegral(p);
  ASSERT_TRUE(r.bound.has_value());
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.last_change, 1e-8);
  EXPECT_LE(std::abs(r.value), 10.0 * *r.bound);
  p.quadrature_n = 512;
  EXPECT_THROW(OscillatoryIntegral(p), Error);
}

TEST(Oscillatory, ScanIsDeterministic) {
  const auto a = OscillatoryScan(6, 3, 1);
  const auto b = OscillatoryScan(6, 3, 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].result.value, b[i].result.value);
    EXPECT_GE(a[i].l, a[i].j + a[i].k);
    EXPECT_TRUE(a[i].result.converged);
  }
}

TEST(VanDerCorput, LinearPhaseIntegratesToZero) {
  VdcProblem pr;
  pr.a = 0.0;
  pr.b = 2.0 * std::numbers::pi;
  pr.p = 1;
  pr.lambda = 1.0;
  pr.phase = [](double x) { return x; };
  pr.phase_derivative = [](double) { return 1.0; };
  pr.amplitude = [](double) { return 1.0; };
  pr.amplitude_derivative = [](double) { return 0.0; };
  const auto r = VanDerCorputCheck(pr);
  EXPECT_LT(r.lhs, 1e-13);
  EXPECT_NEAR(r.rhs, 1.0, 1e-15);
}

TEST(VanDerCorput, ZeroAmplitudeAndCertificate) {
  VdcProblem pr;
  pr.a = -1.0;
  pr.b = 1.0;
  pr.p = 2;
  pr.lambda = 2.0;
  pr.phase = [](double x) { return x * x; };
  pr.phase_derivative = [](double) { return 2.0; };
  pr.amplitude = [](double) { return 0.0; };
  pr.amplitude_derivative = [](double) { return 0.0; };
  const auto r = VanDerCorputCheck(pr);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_LE(r.lhs, r.rhs);
  pr.lambda = 3.0;
  try {
    VanDerCorputCheck(pr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCertificateViolation);
  }
}

TEST(VanDerCorput, StationaryPhaseScaling) {
  const auto rows = VanDerCorputScan(0, 12);
  for (const auto& row : rows) {
    EXPECT_LT(row.scaled_lhs, 3.0);
    EXPECT_LE(row.result.lhs, row.result.rhs);
    EXPECT_GT(row.result.rhs_printed, row.result.rhs);
  }
  // large t: lhs sqrt(t) -> sqrt(pi)
  EXPECT_NEAR(rows.back().scaled_lhs, std::sqrt(std::numbers::pi), 0.01);
}

TEST(Kernel, EqualTimesGivePositiveWeightSum) {
  KernelQuery q;
  q.j = 2;
  q.k = 3;
  q.l = 5;
  const auto r = KernelSum(q);
  double expect = 0.0;
  for (int m = -16; m <= 16; ++m) {
    for (int n = -32; n <= 32; ++n) {
      const double a = Psi1(m / 4.0), b = Psi1(n / 8.0);
      expect += a * a * b * b;
    }
  }
  EXPECT_NEAR(r.value.real(), expect, 1e-12 * expect);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-12);
  EXPECT_GT(r.terms, 0);
}

TEST(Kernel, SmallCellMatchesEnumeration) {
  KernelQuery q;
  q.j = 1;
  q.k = 1;
  q.l = 2;
  q.t = 0.2;
  q.t_prime = -0.05;
  q.x = 0.7;
  q.y = 2.1;
  q.symbol.beta = 0.5;
  std::complex<double> expect = 0.0;
  for (int m = -8; m <= 8; ++m) {
    for (int n = -8; n <= 8; ++n) {
      const double w = std::pow(Psi1(m / 2.0) * Psi1(n / 2.0), 2);
      if (w == 0.0) continue;
      const double omega = m * (std::pow(std::abs(m), 2.0) + std::pow(std::abs(n), 1.5));
      expect += w * std::polar(1.0, m * q.x + n * q.y + omega * (q.t - q.t_prime));
    }
  }
  EXPECT_LT(std::abs(KernelSum(q).value - expect), 1e-12);
}

TEST(Kernel, ConjugateSymmetryIsExact) {
  KernelQuery q;
  q.j = 4;
  q.k = 3;
  q.l = 8;
  q.t = 0.003;
  q.t_prime = -0.001;
  q.x = 1.1;
  q.y = 5.3;
  q.symbol.alpha = 2;
  q.symbol.sign = DispersionSign::kMinus;
  const auto a = KernelSum(q).value;
  std::swap(q.t, q.t_prime);
  q.x = -q.x;
  q.y = -q.y;
  const auto b = KernelSum(q).value;
  EXPECT_EQ(a, std::conj(b));
}

TEST(Kernel, OutsideTimeCutoffIsZero) {
  KernelQuery q;
  q.j = 2;
  q.k = 2;
  q.l = 4;
  q.t = 0.5;
  EXPECT_EQ(KernelSum(q).value, std::complex<double>(0.0));
  q.t = 0.0;
  q.t_prime = 0.0;
  EXPECT_EQ(KernelSumLocalized(q).value, std::complex<double>(0.0));
  q.l = 1;
  EXPECT_THROW(KernelSum(q), Error);
}

TEST(Kernel, LWindows) {
  EXPECT_EQ(KernelLWindow(1, 4, 4), std::make_pair(8, 10));
  EXPECT_EQ(KernelLWindow(2, 4, 4), std::make_pair(8, 10));
  EXPECT_EQ(KernelLWindow(3, 4, 4), std::make_pair(8, 12));
  EXPECT_EQ(KernelLWindow(1, 4, 8), std::make_pair(12, 12));
}

TEST(Kernel, LRulesAgreeOnDiagonalCells) {
  // for j = k the proof window [2j, 2j+2] equals [j+k, j+k+2]
  KernelScanConfig cfg;
  cfg.j_min = cfg.k_min = 3;
  cfg.j_max = cfg.k_max = 4;
  cfg.samples_per_cell = 8;
  const auto admissible = KernelDecayScan(cfg);
  cfg.l_rule = KernelLRule::kProofWindow;
  const auto proof = KernelDecayScan(cfg);
  for (std::size_t i = 0; i < admissible.cells.size(); ++i) {
    const auto& c = admissible.cells[i];
    if (c.j == c.k) {
      EXPECT_EQ(c.measured, proof.cells[i].measured);
    }
  }
  cfg.l_span = -1;
  EXPECT_THROW(KernelDecayScan(cfg), Error);
}

TEST(Kernel, DecayMeasureBelowTrivialBound) {
  // |K| <= number of lattice terms, so |K| 2^-l <= 4 * 2^{j+k+4} 2^{-(j+k)}
  KernelScanConfig cfg;
  cfg.j_min = cfg.k_min = 2;
  cfg.j_max = cfg.k_max = 4;
  cfg.samples_per_cell = 4;
  cfg.l_span = 0;
  for (const auto& c : KernelDecayScan(cfg).cells) {
    EXPECT_GT(c.measured, 0.0);
    EXPECT_LE(c.measured, 64.0);
  }
}

TEST(Kernel, JSlopeStableAcrossSeeds) {
  KernelScanConfig cfg;
  cfg.j_min = 3;
  cfg.j_max = 7;
  cfg.k_min = cfg.k_max = 4;
  cfg.samples_per_cell = 64;
  std::vector<double> slopes;
  for (std::uint64_t seed : {1, 2, 3}) {
    cfg.seed = seed;
    slopes.push_back(KernelDecayScan(cfg).fit.slope_j);
  }
  const auto [lo, hi] = std::minmax_element(slopes.begin(), slopes.end());
  EXPECT_LT(*hi - *lo, 0.2);
  EXPECT_LT(*hi, 0.0);
}

TEST(Kernel, CountingModeSlopesAreOne) {
  KernelScanConfig cfg;
  cfg.j_min = 2;
  cfg.j_max = 5;
  cfg.k_min = 2;
  cfg.k_max = 5;
  cfg.mode = KernelScanMode::kCounting;
  const auto rep = KernelDecayScan(cfg);
  EXPECT_NEAR(rep.fit.slope_j, 1.0, 0.05);
  EXPECT_NEAR(rep.fit.slope_k, 1.0, 0.05);
}

TEST(Kernel, ScanNeedsSamples) {
  KernelScanConfig cfg;
  cfg.samples_per_cell = 0;
  try {
    KernelDecayScan(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(Kernel, ScanDeterministicAcrossWorkers) {
  KernelScanConfig cfg;
  cfg.j_min = 2;
  cfg.j_max = 4;
  cfg.k_min = 2;
  cfg.k_max = 3;
  cfg.samples_per_cell = 3;
  cfg.workers = 1;
  const auto a = KernelDecayScan(cfg);
  cfg.workers = 4;
  const auto b = KernelDecayScan(cfg);
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].measured, b.cells[i].measured);
}

TEST(Strichartz, SingleModeClosedForm) {
  const Grid g(32, 32);
  DispersionSymbol sym;
  for (int j = 1; j <= 3; ++j) {
    const int k = 2;
    SpectralField phi(g);
    const double amp = 0.7;
    phi.at(1 << (j - 1), 1 << (k - 1)) = amp;
    const double window = std::ldexp(1.0, -(j + k));
    EXPECT_NEAR(StrichartzNorm(phi, sym, window), amp * std::sqrt(window), 1e-12);
  }
}

TEST(Strichartz, SmallScanShowsDecay) {
  StrichartzScanConfig cfg;
  cfg.j_min = 2;
  cfg.j_max = 5;
  cfg.k_min = 2;
  cfg.k_max = 5;
  cfg.trials = 3;
  const auto rep = StrichartzScan(cfg);
  EXPECT_LT(rep.fit.slope_j, rep.expected_slope_j + 0.1);
  EXPECT_LT(rep.fit.slope_k, rep.expected_slope_k + 0.1);
  EXPECT_TRUE(std::isfinite(rep.uniform_constant));
  for (const auto& c : rep.cells) EXPECT_LE(c.measured, rep.uniform_constant * c.bound * (1 + 1e-12));
}

TEST(Strichartz, XOnlyCellUsesJOnlyBound) {
  StrichartzScanConfig cfg;
  cfg.j_min = 3;
  cfg.j_max = 4;
  cfg.k_min = 0;
  cfg.k_max = 1;
  cfg.trials = 2;
  const auto rep = StrichartzScan(cfg);
  for (const auto& c : rep.cells) {
    if (c.k == 0) EXPECT_DOUBLE_EQ(c.bound, std::exp2(rep.expected_slope_j * c.j));
  }
  cfg.j_min = 0;
  EXPECT_THROW(StrichartzScan(cfg), Error);
}

TEST(Strichartz, UnitDataStaysBelowOne) {
  // unit L2 data: the windowed norm is at most sup|u| * sqrt(window)
  StrichartzScanConfig cfg;
  cfg.j_min = cfg.j_max = 2;
  cfg.k_min = cfg.k_max = 2;
  cfg.trials = 1;
  cfg.seed = 77;
  const double fast = StrichartzScan(cfg).cells[0].measured;
  EXPECT_GT(fast, 0.0);
  // the general routine on a unit single mode pair gives the same scale
  const Grid g(8, 8);
  SpectralField phi(g);
  phi.at(2, 2) = 0.5 / (2 * std::numbers::pi) * std::sqrt(2.0);
  phi.at(-2, -2) = std::conj(phi.at(2, 2));
  EXPECT_NEAR(L2Norm(phi), 1.0, 1e-14);
  EXPECT_LE(StrichartzNorm(phi, cfg.symbol, 1.0 / 16), 1.0);
}

TEST(Fit, RecoversPlane) {
  std::vector<ScanCell> cells;
  for (int j = 1; j <= 4; ++j) {
    for (int k = 1; k <= 3; ++k) cells.push_back({j, k, std::exp2(1.5 - 0.25 * j - 0.5 * k), 1, 1, 1});
  }
  const auto fit = FitPlane(cells);
  EXPECT_NEAR(fit.intercept, 1.5, 1e-12);
  EXPECT_NEAR(fit.slope_j, -0.25, 1e-12);
  EXPECT_NEAR(fit.slope_k, -0.5, 1e-12);
  cells.resize(1);
  EXPECT_TRUE(std::isnan(FitPlane(cells).slope_j));
}

}  // namespace
}  // namespace zkd::lab
