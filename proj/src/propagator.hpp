#pragma once

#include "spectral_field.hpp"

namespace zkd {

enum class DispersionSign { kPlus = 1, kMinus = -1 };

// Linear part of u_t - d_x(D_x^{1+alpha} +- D_y^{1+beta}) u = 0 with optional
// biharmonic damping mu * Delta^2 u.
struct DispersionSymbol {
  int alpha = 1;
  double beta = 1.0;
  DispersionSign sign = DispersionSign::kPlus;
  double mu = 0.0;

  // Throws kDomain unless alpha in {1,2,3}, beta in (0,1], mu >= 0.
  void Validate() const;
};

// m (|m|^{1+alpha} + sign |n|^{1+beta}); integer powers are exact.
double DispersionRelation(int m, int n, const DispersionSymbol& symbol);

// mu (m^2 + n^2)^2.
double Damping(int m, int n, const DispersionSymbol& symbol);

// Multiplier exp((i omega - gamma) t) used by the propagator and the
// integrators. On the x-Nyquist row the phase is dropped: that slot stands for
// both +nx/2 and -nx/2, whose phases are opposite, and keeping it would break
// Hermitian symmetry.
Complex LinearFactor(const Grid& grid, int m, int n, double t,
                     const DispersionSymbol& symbol);

// Applies the linear group W(t) (a semigroup when mu > 0).
SpectralField Propagate(const SpectralField& field, double t, const DispersionSymbol& symbol);

}  // namespace zkd
