#pragma once

#include <span>
#include <utility>
#include <vector>

#include "propagator.hpp"
#include "spectral_field.hpp"

namespace zkd {

struct SupNorms {
  double u = 0.0;
  double ux = 0.0;
  double uy = 0.0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  std::vector<std::pair<double, double>> h_s_norms;  // (s, ||u||_{H^s})
  double sup_u = 0.0;
  double sup_ux = 0.0;
  double sup_uy = 0.0;
  double g_accum = 0.0;            // int_0^t (sup_u + sup_ux + sup_uy)
  double laplacian_sq = 0.0;       // ||Delta u||_0^2
  double dissipation_accum = 0.0;  // 2 mu int_0^t ||Delta u||_0^2
};

// M(u) = \int u^2 = (2pi)^2 sum |u^|^2.
double Mass(const SpectralField& u);

// (1/2) \int (D_x^{(1+a)/2} u)^2 +- (D_y^{(1+b)/2} u)^2, computed spectrally.
double EnergyQuadratic(const SpectralField& u, const DispersionSymbol& symbol);

// \int u^3 by quadrature on a 2x zero-padded grid, exact for band-limited u.
double CubicIntegral(const SpectralField& u);

// E(u) = EnergyQuadratic - CubicIntegral / 6.
double Energy(const SpectralField& u, const DispersionSymbol& symbol);

// ||Delta u||_0^2 = (2pi)^2 sum (m^2+n^2)^2 |u^|^2.
double LaplacianNormSquared(const SpectralField& u);

// Grid maxima of |u|, |u_x|, |u_y| on a 2x spectrally interpolated grid.
// The grid maximum can only underestimate the true supremum.
SupNorms SupNormDiagnostics(const SpectralField& u);

// Product f g evaluated without aliasing on a 3x padded grid; the result lives
// on that padded grid.
SpectralField ExactProduct(const SpectralField& f, const SpectralField& g);

struct CommutatorResult {
  double lhs = 0.0;  // ||J^s(fg) - f J^s g||_{L^2}
  double rhs = 0.0;  // ||J^s f|| ||g||_inf + (||f||_inf + ||grad f||_inf) ||J^{s-1} g||
};

// Kato-Ponce commutator. lhs is evaluated as the exact convolution
// sum_q f^(p-q) g^(q) (<p>^s - <q>^s), so it vanishes identically for constant f.
CommutatorResult CommutatorCheck(const SpectralField& f, const SpectralField& g, double s);

struct L1tLinfReport {
  double lhs = 0.0;          // ||u||_{L^1_T L^inf}
  double rhs = 0.0;          // T^{1/2} (||J_x^s1 J_y^s2 u||_{L^inf_T L^2} + ||J_x^s1 f||_{L^1_T L^2})
  double ratio = 0.0;        // lhs / rhs, 0 when both vanish
  double horizon = 0.0;      // T
  double sup_term = 0.0;     // ||J_x^s1 J_y^s2 u||_{L^inf_T L^2}
  double forcing_term = 0.0; // ||J_x^s1 f||_{L^1_T L^2}, f = u^2/2
};

// Compares both sides of the L^1_T L^inf bound on a recorded trajectory. Time
// integrals use the trapezoid rule over the recorded times.
L1tLinfReport L1tLinfEstimateCheck(std::span<const double> times,
                                   std::span<const SpectralField> states,
                                   const DispersionSymbol& symbol, double s1, double s2);

// Builds diagnostics records along a run and accumulates the time integrals.
class DiagnosticsAccumulator {
 public:
  DiagnosticsAccumulator(DispersionSymbol symbol, std::vector<double> sobolev_s)
      : symbol_(symbol), sobolev_s_(std::move(sobolev_s)) {}

  const DiagnosticsRecord& Push(double t, const SpectralField& u);
  const std::vector<DiagnosticsRecord>& records() const noexcept { return records_; }
  std::vector<DiagnosticsRecord> TakeRecords() { return std::move(records_); }

 private:
  DispersionSymbol symbol_;
  std::vector<double> sobolev_s_;
  std::vector<DiagnosticsRecord> records_;
};

}  // namespace zkd
