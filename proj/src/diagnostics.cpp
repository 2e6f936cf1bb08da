#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spectral_ops.hpp"

namespace zkd {
namespace {

constexpr double kFourPiSq = kTwoPi * kTwoPi;

double Trapezoid(std::span<const double> t, std::span<const double> f) {
  double sum = 0.0;
  for (std::size_t i = 1; i < t.size(); ++i) sum += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return sum;
}

double Bracket(int m, int n) {
  return 1.0 + static_cast<double>(m) * m + static_cast<double>(n) * n;
}

}  // namespace

double Mass(const SpectralField& u) {
  const double norm = u.CoefficientNorm();
  return kFourPiSq * norm * norm;
}

double EnergyQuadratic(const SpectralField& u, const DispersionSymbol& symbol) {
  const double sign = static_cast<double>(static_cast<int>(symbol.sign));
  double sum = 0.0;
  u.ForEach([&](int m, int n, const Complex& c) {
    if (c == Complex(0.0)) return;
    const double am = std::abs(static_cast<double>(m));
    double x_part = 1.0;
    for (int i = 0; i < 1 + symbol.alpha; ++i) x_part *= am;
    const double an = std::abs(static_cast<double>(n));
    const double y_part = symbol.beta == 1.0 ? an * an : std::pow(an, 1.0 + symbol.beta);
    sum += (x_part + sign * y_part) * std::norm(c);
  });
  return 0.5 * kFourPiSq * sum;
}

double CubicIntegral(const SpectralField& u) {
  const Grid padded(2 * u.grid().nx(), 2 * u.grid().ny());
  const SpectralField fine = Resample(u, padded);
  double sum = 0.0;
  for (const Complex& v : InverseTransformComplex(fine)) sum += (v * v * v).real();
  return kFourPiSq * sum / static_cast<double>(padded.size());
}

double Energy(const SpectralField& u, const DispersionSymbol& symbol) {
  return EnergyQuadratic(u, symbol) - CubicIntegral(u) / 6.0;
}

double LaplacianNormSquared(const SpectralField& u) {
  double sum = 0.0;
  u.ForEach([&](int m, int n, const Complex& c) {
    const double k2 = static_cast<double>(m) * m + static_cast<double>(n) * n;
    sum += k2 * k2 * std::norm(c);
  });
  return kFourPiSq * sum;
}

SupNorms SupNormDiagnostics(const SpectralField& u) {
  return SupNorms{SupNorm(u, 2), SupNorm(Derivative(u, Axis::kX), 2),
                  SupNorm(Derivative(u, Axis::kY), 2)};
}

SpectralField ExactProduct(const SpectralField& f, const SpectralField& g) {
  Require(f.grid() == g.grid(), ErrorCode::kInvalidArgument, "grid mismatch");
  const Grid padded(3 * f.grid().nx(), 3 * f.grid().ny());
  const auto fv = InverseTransformComplex(Resample(f, padded));
  const auto gv = InverseTransformComplex(Resample(g, padded));
  std::vector<Complex> prod(fv.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = fv[i] * gv[i];
  return ForwardTransformComplex(padded, prod);
}

CommutatorResult CommutatorCheck(const SpectralField& f, const SpectralField& g, double s) {
  Require(s >= 1.0, ErrorCode::kInvalidArgument,
          "commutator estimate requires s >= 1, got " + std::to_string(s));
  Require(f.grid() == g.grid(), ErrorCode::kInvalidArgument, "grid mismatch");

  struct Mode {
    int m;
    int n;
    Complex c;
  };
  std::vector<Mode> fm;
  std::vector<Mode> gm;
  f.ForEach([&](int m, int n, const Complex& c) {
    if (c != Complex(0.0)) fm.push_back({m, n, c});
  });
  g.ForEach([&](int m, int n, const Complex& c) {
    if (c != Complex(0.0)) gm.push_back({m, n, c});
  });

  // Output wavenumbers p = a + q are not wrapped, so the sum is alias-free.
  std::map<std::pair<int, int>, Complex> out;
  for (const Mode& q : gm) {
    const double jq = std::pow(Bracket(q.m, q.n), 0.5 * s);
    for (const Mode& a : fm) {
      const int pm = a.m + q.m;
      const int pn = a.n + q.n;
      const double weight = std::pow(Bracket(pm, pn), 0.5 * s) - jq;
      if (weight == 0.0) continue;
      out[{pm, pn}] += a.c * q.c * weight;
    }
  }
  double lhs_sq = 0.0;
  for (const auto& [key, c] : out) lhs_sq += std::norm(c);

  CommutatorResult result;
  result.lhs = kTwoPi * std::sqrt(lhs_sq);

  const double js_f = L2Norm(BesselPotential(f, BesselMode::kFull, s));
  const double js1_g = L2Norm(BesselPotential(g, BesselMode::kFull, s - 1.0));
  const double g_inf = SupNorm(g, 2);
  const double f_inf = SupNorm(f, 2);

  const Grid fine(2 * f.grid().nx(), 2 * f.grid().ny());
  const auto fx = InverseTransformComplex(Resample(Derivative(f, Axis::kX), fine));
  const auto fy = InverseTransformComplex(Resample(Derivative(f, Axis::kY), fine));
  double grad_inf = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    grad_inf = std::max(grad_inf, std::sqrt(std::norm(fx[i]) + std::norm(fy[i])));
  }
  result.rhs = js_f * g_inf + (f_inf + grad_inf) * js1_g;
  return result;
}

L1tLinfReport L1tLinfEstimateCheck(std::span<const double> times,
                                   std::span<const SpectralField> states,
                                   const DispersionSymbol& symbol, double s1, double s2) {
  Require(times.size() == states.size(), ErrorCode::kInvalidArgument,
          "times and states differ in length");
  Require(states.size() >= 4, ErrorCode::kInsufficientData,
          "L^1_T L^inf check needs at least 4 recorded states, got " +
              std::to_string(states.size()));
  symbol.Validate();
  const double s1_min = 0.5 - 1.0 / std::pow(2.0, symbol.alpha + 2);
  const double s2_min = 0.5 - symbol.beta / 4.0;
  Require(s1 > s1_min, ErrorCode::kInvalidArgument,
          "s1 must exceed " + std::to_string(s1_min));
  Require(s2 > s2_min, ErrorCode::kInvalidArgument,
          "s2 must exceed " + std::to_string(s2_min));

  std::vector<double> sup(states.size());
  std::vector<double> forcing(states.size());
  double sup_term = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const SpectralField& u = states[i];
    sup[i] = SupNorm(u, 2);
    const SpectralField weighted =
        BesselPotential(BesselPotential(u, BesselMode::kXOnly, s1), BesselMode::kYOnly, s2);
    sup_term = std::max(sup_term, L2Norm(weighted));
    SpectralField f = ExactProduct(u, u);
    f *= 0.5;
    forcing[i] = L2Norm(BesselPotential(f, BesselMode::kXOnly, s1));
  }

  L1tLinfReport report;
  report.horizon = times.back() - times.front();
  report.lhs = Trapezoid(times, sup);
  report.sup_term = sup_term;
  report.forcing_term = Trapezoid(times, forcing);
  report.rhs = std::sqrt(report.horizon) * (report.sup_term + report.forcing_term);
  report.ratio = report.rhs == 0.0 ? 0.0 : report.lhs / report.rhs;
  return report;
}

const DiagnosticsRecord& DiagnosticsAccumulator::Push(double t, const SpectralField& u) {
  DiagnosticsRecord rec;
  rec.t = t;
  rec.mass = Mass(u);
  rec.energy = Energy(u, symbol_);
  for (double s : sobolev_s_) rec.h_s_norms.emplace_back(s, SobolevNorm(u, s));
  const SupNorms sup = SupNormDiagnostics(u);
  rec.sup_u = sup.u;
  rec.sup_ux = sup.ux;
  rec.sup_uy = sup.uy;
  rec.laplacian_sq = LaplacianNormSquared(u);
  if (!records_.empty()) {
    const DiagnosticsRecord& prev = records_.back();
    const double dt = t - prev.t;
    rec.g_accum = prev.g_accum + 0.5 * dt *
                                     (prev.sup_u + prev.sup_ux + prev.sup_uy + rec.sup_u +
                                      rec.sup_ux + rec.sup_uy);
    // d/dt ||u||^2 = -2 mu ||Delta u||^2
    rec.dissipation_accum =
        prev.dissipation_accum + dt * symbol_.mu * (prev.laplacian_sq + rec.laplacian_sq);
  }
  records_.push_back(std::move(rec));
  return records_.back();
}

}  // namespace zkd
