#pragma once

#include <span>
#include <vector>

#include "spectral_field.hpp"

namespace zkd {

enum class Axis { kX, kY };

// Littlewood-Paley shell on one axis: k = 0 selects |wavenumber| in [0,1),
// k >= 1 selects |wavenumber| in [2^{k-1}, 2^k).
struct DyadicShell {
  Axis axis = Axis::kX;
  int k = 0;
};

bool ShellContains(int k, int wavenumber) noexcept;

// Smallest shell index containing |wavenumber|.
int ShellIndex(int wavenumber) noexcept;

enum class BesselMode { kFull, kXOnly, kYOnly };

// Samples are row-major with x outer: samples[a * ny + b] = f(2pi a/nx, 2pi b/ny).
SpectralField ForwardTransform(const Grid& grid, std::span<const double> samples);
SpectralField ForwardTransformComplex(const Grid& grid, std::span<const Complex> samples);

// Requires Hermitian coefficients (relative defect <= 1e-12).
std::vector<double> InverseTransform(const SpectralField& field);
std::vector<Complex> InverseTransformComplex(const SpectralField& field);

// Real part of the synthesis without the symmetry check; internal hot path.
std::vector<double> InverseTransformUnchecked(const SpectralField& field);

SpectralField FractionalDerivative(const SpectralField& field, Axis axis, double power);
SpectralField BesselPotential(const SpectralField& field, BesselMode mode, double s);
SpectralField DyadicProject(const SpectralField& field, DyadicShell shell);

// Exact partial derivative (i m or i n). The Nyquist row/column is zeroed so a
// real field stays real.
SpectralField Derivative(const SpectralField& field, Axis axis);

// (sum (1+m^2+n^2)^s |f^|^2)^{1/2}.
double SobolevNorm(const SpectralField& field, double s);

// Square root of the dyadic sum equivalent to ||J_x^s f||^2 + ||J_y^s f||^2:
//   sum_{k>=0,j>=1} 2^{2js} ||Q_x^k Q_y^j f||^2
// + sum_{k>=1,j>=0} 2^{2ks} ||Q_x^k Q_y^j f||^2 + sum ||Q_x^k Q_y^j f||^2,
// with coefficient (not L^2) norms so it is comparable with SobolevNorm.
double DyadicSobolevNorm(const SpectralField& field, double s);

// L^2(T^2) norm: 2pi * coefficient norm.
double L2Norm(const SpectralField& field);

SpectralField ProjectMeanZeroX(const SpectralField& field);
// ||m = 0 part|| / ||field||, zero for the zero field.
double MeanZeroXViolation(const SpectralField& field);

// 2/3 rule: zero every coefficient with |m| > nx/3 or |n| > ny/3.
SpectralField Dealias(const SpectralField& field);
bool InDealiasedBand(const Grid& grid, int m, int n) noexcept;

// Zero-pads or truncates onto another grid. A Nyquist coefficient is split
// evenly between +N/2 and -N/2 when padding, so real fields stay real.
SpectralField Resample(const SpectralField& field, const Grid& target);

// max |f| over a grid refined by `refinement` (spectral interpolation).
double SupNorm(const SpectralField& field, int refinement);

}  // namespace zkd
