#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "propagator.hpp"
#include "spectral_field.hpp"

namespace zkd {

enum class Integrator { kEtdrk4, kIfrk4 };

struct SimulationConfig {
  DispersionSymbol symbol;
  double t_end = 1.0;
  double dt = 1e-3;
  Grid grid{64, 64};
  Integrator integrator = Integrator::kEtdrk4;
  bool dealias = true;
  int record_every = 100;
  std::uint64_t seed = 0;
  std::vector<double> sobolev_s{1.0, 2.0};
  // Test hook: drop u u_x and integrate only the linear part.
  bool nonlinear = true;

  void Validate() const;
};

struct Trajectory {
  std::vector<double> times;                    // recorded state times, times[0] = 0
  std::vector<SpectralField> states;            // strided snapshots
  std::vector<DiagnosticsRecord> diagnostics;   // one record per step
  std::vector<std::string> warnings;
  double dt_used = 0.0;
  long steps = 0;
};

// -1/2 d_x (u^2), evaluated pseudo-spectrally and (optionally) dealiased, so
// that u_t = L u + NonlinearTerm(u).
SpectralField NonlinearTerm(const SpectralField& u, bool dealias = true);

struct StepOptions {
  bool nonlinear = true;
  bool dealias = true;
};

// Fixed-step exponential integrator with precomputed per-mode coefficients.
// ETDRK4 is the Cox-Matthews scheme; its phi-function coefficients use a
// 32-point contour average when |z| < 1/2. IFRK4 is classical RK4 in
// integrating-factor variables.
class Stepper {
 public:
  Stepper(const Grid& grid, const DispersionSymbol& symbol, double dt, Integrator integrator,
          StepOptions options = {});

  // Throws kDivergence naming `step_index` if the input or result is not finite.
  SpectralField Step(const SpectralField& u, long step_index = 0) const;

  double dt() const noexcept { return dt_; }

 private:
  SpectralField N(const SpectralField& u) const;
  SpectralField StepEtdrk4(const SpectralField& u) const;
  SpectralField StepIfrk4(const SpectralField& u) const;

  Grid grid_;
  DispersionSymbol symbol_;
  double dt_;
  Integrator integrator_;
  StepOptions options_;
  std::vector<Complex> e_;
  std::vector<Complex> e2_;
  std::vector<Complex> q_;
  std::vector<Complex> f1_;
  std::vector<Complex> f2_;
  std::vector<Complex> f3_;
};

SpectralField StepEtdrk4(const SpectralField& u, double dt, const DispersionSymbol& symbol,
                         StepOptions options = {});
SpectralField StepIfrk4(const SpectralField& u, double dt, const DispersionSymbol& symbol,
                        StepOptions options = {});

// Integrates the IVP from phi. phi must be mean-zero in x: a violation up to
// 1e-12 (relative) is projected away, anything larger is rejected.
Trajectory Simulate(const SimulationConfig& config, const SpectralField& phi);

struct RegularizedMember {
  double mu = 0.0;
  Trajectory trajectory;
  double l2_distance = 0.0;        // ||u_mu(t_end) - u_0(t_end)||_{L^2}
  double identity_residual = 0.0;  // |M(phi) - M(u) - 2 mu int ||Delta u||^2| / M(phi)
};

struct RegularizedFamily {
  Trajectory reference;  // mu = 0
  std::vector<RegularizedMember> members;
};

// Runs the mu-regularized problem for each mu (strictly decreasing, > 0) plus
// the mu = 0 reference, `workers` runs at a time.
RegularizedFamily SolveRegularizedFamily(const SimulationConfig& config,
                                         const SpectralField& phi,
                                         const std::vector<double>& mu_list, int workers = 1);

}  // namespace zkd
