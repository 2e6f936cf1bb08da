#pragma once

#include <cstdint>
#include <string>

#include "spectral_field.hpp"

namespace zkd {

enum class Profile { kZero, kSingleMode, kCosX, kTwoMode, kGaussian, kRandom, kFile };

struct ProfileSpec {
  Profile profile = Profile::kTwoMode;
  double amplitude = 1.0;
  int m = 1;             // single-mode wavenumbers
  int n = 0;
  double width = 0.5;    // gaussian
  int band = 8;          // random: |m|, |n| <= band
  std::string path;      // file
  std::uint64_t seed = 1;
};

// Parses "zero", "single-mode", "cos-x", "two-mode", "gaussian", "random", "file".
Profile ParseProfile(const std::string& name);
const char* ProfileName(Profile p);

// Seeded real field with Gaussian coefficients on |m| <= band_x, |n| <= band_y,
// weighted by exp(-(m^2+n^2)/20), scaled to L^2 norm `amplitude`.
SpectralField RandomBandLimited(const Grid& grid, int band_x, int band_y, double amplitude,
                                std::uint64_t seed, bool mean_zero_x = true);

// Profiles:
//   single-mode  A cos(m x + n y)          (m != 0)
//   cos-x        A cos x
//   two-mode     A (cos x + sin(x + y))
//   gaussian     periodized bell A exp(-d^2 / (2 w^2)) around (pi, pi) with its
//                x-mean removed, since the solver needs mean zero in x
//   random       RandomBandLimited(band, band, A, seed)
//   file         LoadField(path), must already match the grid
SpectralField MakeInitialData(const Grid& grid, const ProfileSpec& spec);

}  // namespace zkd
