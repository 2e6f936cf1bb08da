#include "lab/oscillatory.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"
#include "lab/bump.hpp"
#include "lab/quadrature.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace zkd::lab {
namespace {

constexpr int kOrder = 16;
constexpr int kMaxPanels = 1 << 18;

std::complex<double> PositiveBranch(const OscillatoryParams& p, int panels) {
  const double scale = std::ldexp(1.0, p.k);
  const double coef = static_cast<int>(p.sign) * p.t * p.m;
  const double exponent = 1.0 + p.beta;
  double re = 0.0;
  double im = 0.0;
  // eta and -eta together: psi1^2 * 2 cos(y' eta) * e^{i coef eta^{1+beta}}
  CompositeGauss(0.25 * scale, 4.0 * scale, panels, kOrder, [&](double eta, double w) {
    const double psi = Psi1(eta / scale);
    if (psi == 0.0) return;
    const double amp = 2.0 * w * psi * psi * std::cos(p.y_shift * eta);
    const double phase = coef * std::pow(eta, exponent);
    re += amp * std::cos(phase);
    im += amp * std::sin(phase);
  });
  return {re, im};
}

}  // namespace

double OscillatoryBound(const OscillatoryParams& params) {
  const double mt = std::abs(params.m * params.t);
  Require(mt > 0.0, ErrorCode::kBoundUndefined, "oscillatory bound undefined for m t = 0");
  return std::exp2((1.0 - params.beta) * params.k / 2.0) / std::sqrt(mt);
}

OscillatoryResult OscillatoryIntegral(const OscillatoryParams& params) {
  Require(params.k >= 1, ErrorCode::kInvalidArgument, "oscillatory integral needs k >= 1");
  Require(params.quadrature_n >= 1024, ErrorCode::kInvalidArgument,
          "oscillatory integral needs quadrature_n >= 1024");
  Require(params.beta > 0.0 && params.beta <= 1.0, ErrorCode::kDomain,
          "beta must lie in (0, 1]");
  OscillatoryResult result;
  int panels = std::max(1, params.quadrature_n / kOrder);
  std::complex<double> prev = PositiveBranch(params, panels);
  for (;;) {
    const int next_panels = panels * 2;
    const std::complex<double> cur = PositiveBranch(params, next_panels);
    result.last_change = std::abs(cur - prev);
    result.value = cur;
    panels = next_panels;
    prev = cur;
    if (result.last_change < 1e-10 || panels >= kMaxPanels) break;
  }
  result.nodes = panels * kOrder;
  result.converged = result.last_change < 1e-8;
  if (params.m * params.t != 0.0) result.bound = OscillatoryBound(params);
  return result;
}

std::vector<OscillatoryDraw> OscillatoryScan(int draws, std::uint64_t seed, int workers,
                                             int quadrature_n) {
  Require(draws >= 1, ErrorCode::kInsufficientData, "oscillatory scan needs at least one draw");
  std::vector<OscillatoryDraw> out(static_cast<std::size_t>(draws));
  constexpr double kBetas[] = {0.25, 0.5, 1.0};
  ParallelFor(out.size(), workers, [&](std::size_t i) {
    auto rng = CellRng(seed, i);
    OscillatoryDraw& d = out[i];
    d.j = static_cast<int>(UniformInt(rng, 1, 8));
    d.k = static_cast<int>(UniformInt(rng, 1, 8));
    d.l = static_cast<int>(UniformInt(rng, d.j + d.k, d.j + d.k + 4));
    OscillatoryParams& p = d.params;
    p.k = d.k;
    p.quadrature_n = quadrature_n;
    p.beta = kBetas[UniformInt(rng, 0, 2)];
    p.sign = UniformInt(rng, 0, 1) == 0 ? DispersionSign::kPlus : DispersionSign::kMinus;
    // (2^-l, 2^{1-l}]: 1 - u keeps the open end open
    const double t_mag = std::ldexp(1.0 + (1.0 - Uniform01(rng)), -d.l);
    p.t = UniformInt(rng, 0, 1) == 0 ? t_mag : -t_mag;
    const double m_mag = static_cast<double>(
        UniformInt(rng, std::int64_t{1} << (d.j - 1), std::int64_t{1} << (d.j + 1)));
    p.m = UniformInt(rng, 0, 1) == 0 ? m_mag : -m_mag;
    p.y_shift = Uniform(rng, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    d.result = OscillatoryIntegral(p);
    d.ratio = std::abs(d.result.value) / *d.result.bound;
  });
  return out;
}

VdcResult VanDerCorputCheck(const VdcProblem& pr) {
  Require(pr.p >= 1, ErrorCode::kInvalidArgument, "Van der Corput needs p >= 1");
  Require(pr.lambda > 0.0, ErrorCode::kInvalidArgument, "Van der Corput needs lambda > 0");
  Require(pr.b > pr.a, ErrorCode::kInvalidArgument, "Van der Corput needs a < b");
  Require(pr.phase && pr.phase_derivative && pr.amplitude && pr.amplitude_derivative,
          ErrorCode::kInvalidArgument, "Van der Corput needs phase, derivative and amplitude");
  auto check = [&](double x) {
    const double d = std::abs(pr.phase_derivative(x));
    if (!(d >= pr.lambda)) {
      Fail(ErrorCode::kCertificateViolation,
           "|phi^(p)(" + std::to_string(x) + ")| = " + std::to_string(d) + " < lambda = " +
               std::to_string(pr.lambda));
    }
  };
  check(pr.a);
  check(pr.b);

  VdcResult out;
  out.amplitude_sup = std::max(std::abs(pr.amplitude(pr.a)), std::abs(pr.amplitude(pr.b)));
  auto integrate = [&](int panels, double& variation, double& sup) {
    std::complex<double> acc = 0.0;
    variation = 0.0;
    CompositeGauss(pr.a, pr.b, panels, kOrder, [&](double x, double w) {
      check(x);
      const double psi = pr.amplitude(x);
      sup = std::max(sup, std::abs(psi));
      variation += w * std::abs(pr.amplitude_derivative(x));
      acc += w * psi * std::polar(1.0, pr.phase(x));
    });
    return acc;
  };
  int panels = std::max(1, pr.panels);
  double variation = 0.0;
  std::complex<double> prev = integrate(panels, variation, out.amplitude_sup);
  double prev_var = variation;
  for (;;) {
    panels *= 2;
    const std::complex<double> cur = integrate(panels, variation, out.amplitude_sup);
    const bool stable = std::abs(cur - prev) < 1e-12 * (1.0 + std::abs(cur)) &&
                        std::abs(variation - prev_var) < 1e-12 * (1.0 + variation);
    prev = cur;
    prev_var = variation;
    if (stable || panels >= kMaxPanels) break;
  }
  out.lhs = std::abs(prev);
  out.amplitude_variation = variation;
  out.panels = panels;
  const double mass = out.amplitude_sup + out.amplitude_variation;
  out.rhs = std::pow(pr.lambda, -1.0 / pr.p) * mass;
  out.rhs_printed = std::pow(pr.lambda, 1.0 / pr.p) * mass;
  return out;
}

double UnitBump(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

double UnitBumpDerivative(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  const double s = 1.0 - x * x;
  return UnitBump(x) * (-2.0 * x / (s * s));
}

std::vector<VdcScanRow> VanDerCorputScan(int i_min, int i_max) {
  Require(i_max >= i_min, ErrorCode::kInsufficientData, "Van der Corput scan needs i_min <= i_max");
  std::vector<VdcScanRow> rows;
  for (int i = i_min; i <= i_max; ++i) {
    const double t = std::ldexp(1.0, i);
    VdcProblem pr;
    pr.a = -1.0;
    pr.b = 1.0;
    pr.p = 2;
    pr.lambda = 2.0 * t;
    pr.phase = [t](double x) { return t * x * x; };
    pr.phase_derivative = [t](double) { return 2.0 * t; };
    pr.amplitude = UnitBump;
    pr.amplitude_derivative = UnitBumpDerivative;
    VdcScanRow row;
    row.t = t;
    row.result = VanDerCorputCheck(pr);
    row.scaled_lhs = row.result.lhs * std::sqrt(t);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zkd::lab
