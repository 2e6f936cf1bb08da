#include <gtest/gtest.h>

#include <cmath>

#include "diagnostics.hpp"
#include "error.hpp"
#include "spectral_ops.hpp"
#include "support.hpp"

namespace zkd {
namespace {

using testing::MaxAbsDiff;
using testing::RandomReal;

// Rectangle rule on the grid: exact for trigonometric polynomials whose
// degree stays below the grid size.
double GridIntegral(const Grid& g, const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc * g.dx() * g.dy();
}

TEST(Mass, SpectralMatchesGridQuadrature) {
  const Grid g(32, 32);
  const auto u = RandomReal(g, 10, 10, 1.7, 3);
  auto s = InverseTransform(u);
  for (auto& x : s) x *= x;
  EXPECT_NEAR(Mass(u), GridIntegral(g, s), 1e-9 * Mass(u));
  EXPECT_NEAR(Mass(u), 1.7 * 1.7, 1e-12);
}

TEST(Energy, SpectralMatchesGridQuadrature) {
  const Grid g(48, 48);
  for (auto sign : {DispersionSign::kPlus, DispersionSign::kMinus}) {
    DispersionSymbol sym;
    sym.alpha = 2;
    sym.beta = 0.5;
    sym.sign = sign;
    const auto u = RandomReal(g, 10, 10, 2.0, 4);
    const double sg = static_cast<int>(sign);
    const auto dx = InverseTransform(FractionalDerivative(u, Axis::kX, 1.5));
    const auto dy = InverseTransform(FractionalDerivative(u, Axis::kY, 0.75));
    const auto uu = InverseTransform(u);
    std::vector<double> density(uu.size());
    for (std::size_t i = 0; i < uu.size(); ++i) {
      density[i] = 0.5 * (dx[i] * dx[i] + sg * dy[i] * dy[i]) - uu[i] * uu[i] * uu[i] / 6.0;
    }
    const double grid = GridIntegral(g, density);
    EXPECT_NEAR(Energy(u, sym), grid, 1e-9 * std::abs(grid));
  }
}

TEST(Energy, CubicIntegralOfKnownProfile) {
  const Grid g(16, 16);
  // only 3 cos^2 x cos 2x survives: 3 * (pi/2) in x, times 2 pi in y
  const auto u = ForwardTransform(
      g, testing::Sample(g, [](double x, double) { return std::cos(x) + std::cos(2 * x); }));
  EXPECT_NEAR(CubicIntegral(u), 3.0 * 0.5 * std::numbers::pi * 2.0 * std::numbers::pi, 1e-12);
}

TEST(Product, ExactProductMatchesFineGrid) {
  const Grid g(16, 16);
  const auto f = RandomReal(g, 7, 7, 1.0, 1);
  const auto h = RandomReal(g, 7, 7, 1.0, 2);
  const auto prod = ExactProduct(f, h);
  const Grid fine(64, 64);
  auto a = InverseTransform(Resample(f, fine));
  const auto b = InverseTransform(Resample(h, fine));
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  const auto oracle = Resample(ForwardTransform(fine, a), prod.grid());
  EXPECT_LT(MaxAbsDiff(prod, oracle), 1e-13);
}

TEST(Sup, DiagnosticsOfSimpleWave) {
  const Grid g(16, 16);
  const auto u = ForwardTransform(
      g, testing::Sample(g, [](double x, double y) { return std::sin(x + 2 * y); }));
  const auto sup = SupNormDiagnostics(u);
  EXPECT_NEAR(sup.u, 1.0, 1e-3);
  EXPECT_NEAR(sup.ux, 1.0, 1e-3);
  EXPECT_NEAR(sup.uy, 2.0, 2e-3);
  EXPECT_LE(sup.u, 1.0 + 1e-12);
}

TEST(Commutator, ConstantFunctionGivesExactZero) {
  const Grid g(16, 16);
  SpectralField f(g);
  f.at(0, 0) = 3.0;
  const auto h = RandomReal(g, 7, 7, 1.0, 5);
  for (double s : {1.0, 1.5, 2.0}) {
    const auto r = CommutatorCheck(f, h, s);
    EXPECT_EQ(r.lhs, 0.0);
    EXPECT_GT(r.rhs, 0.0);
  }
  EXPECT_THROW(CommutatorCheck(f, h, 0.5), Error);
}

TEST(Commutator, ConvolutionMatchesPaddedOracle) {
  const Grid g(16, 16);
  const auto f = RandomReal(g, 7, 7, 1.0, 6);
  const auto h = RandomReal(g, 7, 7, 1.0, 7);
  for (double s : {1.0, 1.5, 2.0}) {
    const auto js_h = BesselPotential(h, BesselMode::kFull, s);
    const auto js_fh = BesselPotential(ExactProduct(f, h), BesselMode::kFull, s);
    const double oracle = L2Norm(js_fh - ExactProduct(f, js_h));
    const auto r = CommutatorCheck(f, h, s);
    EXPECT_NEAR(r.lhs, oracle, 1e-10 * oracle);
    EXPECT_LE(r.lhs, 100.0 * r.rhs);
  }
}

TEST(L1tLinf, NeedsFourStates) {
  const Grid g(16, 16);
  DispersionSymbol sym;
  std::vector<double> t{0.0, 0.1, 0.2};
  std::vector<SpectralField> u(3, SpectralField(g));
  try {
    L1tLinfEstimateCheck(t, u, sym, 0.6, 0.6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInsufficientData);
  }
}

TEST(L1tLinf, LinearFlowSatisfiesBound) {
  const Grid g(32, 32);
  DispersionSymbol sym;
  const auto phi = RandomReal(g, 10, 10, 1.0, 9);
  std::vector<double> t;
  std::vector<SpectralField> u;
  for (int i = 0; i <= 8; ++i) {
    t.push_back(0.01 * i);
    u.push_back(Propagate(phi, t.back(), sym));
  }
  const auto r = L1tLinfEstimateCheck(t, u, sym, 0.9, 0.9);
  EXPECT_GT(r.lhs, 0.0);
  EXPECT_LE(r.lhs, r.rhs);
  EXPECT_DOUBLE_EQ(r.horizon, 0.08);
}

TEST(Accumulator, TrapezoidIntegrals) {
  const Grid g(16, 16);
  DispersionSymbol sym;
  sym.mu = 0.5;
  DiagnosticsAccumulator acc(sym, {1.0});
  SpectralField u(g);
  u.at(1, 0) = 0.5;
  u.at(-1, 0) = 0.5;  // cos x
  acc.Push(0.0, u);
  acc.Push(0.25, u);
  const auto& r = acc.records().back();
  EXPECT_NEAR(r.g_accum, 0.25 * (r.sup_u + r.sup_ux + r.sup_uy), 1e-15);
  // ||Delta cos x||^2 = 2 pi^2
  EXPECT_NEAR(r.laplacian_sq, 2.0 * std::numbers::pi * std::numbers::pi, 1e-12);
  EXPECT_NEAR(r.dissipation_accum, 2.0 * 0.5 * 0.25 * r.laplacian_sq, 1e-12);
  ASSERT_EQ(r.h_s_norms.size(), 1u);
  EXPECT_EQ(r.h_s_norms[0].first, 1.0);
}

}  // namespace
}  // namespace zkd
