#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "initial_data.hpp"
#include "rng.hpp"
#include "spectral_field.hpp"
#include "spectral_ops.hpp"

namespace zkd::testing {

// Real random field with |m| <= band_x, |n| <= band_y and Gaussian decay,
// optionally with the m = 0 row removed.
inline SpectralField RandomReal(const Grid& grid, int band_x, int band_y, double amplitude,
                                std::uint64_t seed, bool mean_zero_x = true) {
  return RandomBandLimited(grid, band_x, band_y, amplitude, seed, mean_zero_x);
}

// Samples f(x_a, y_b) with x outer.
template <typename Fn>
std::vector<double> Sample(const Grid& grid, Fn&& fn) {
  std::vector<double> v(grid.size());
  for (int a = 0; a < grid.nx(); ++a) {
    for (int b = 0; b < grid.ny(); ++b) {
      v[static_cast<std::size_t>(a) * grid.ny() + b] = fn(a * grid.dx(), b * grid.dy());
    }
  }
  return v;
}

// O(N^4) reference DFT in the library's normalization.
inline SpectralField DirectDft(const Grid& grid, const std::vector<double>& samples) {
  SpectralField out(grid);
  const double inv = 1.0 / static_cast<double>(grid.size());
  out.ForEach([&](int m, int n, Complex& c) {
    std::complex<long double> acc = 0.0L;
    for (int a = 0; a < grid.nx(); ++a) {
      for (int b = 0; b < grid.ny(); ++b) {
        const long double angle =
            -2.0L * 3.14159265358979323846264338327950288L *
            (static_cast<long double>(m) * a / grid.nx() + static_cast<long double>(n) * b / grid.ny());
        acc += static_cast<long double>(samples[static_cast<std::size_t>(a) * grid.ny() + b]) *
               std::complex<long double>(std::cos(angle), std::sin(angle));
      }
    }
    c = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag())) * inv;
  });
  return out;
}

inline double MaxAbsDiff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    d = std::max(d, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  }
  return d;
}

}  // namespace zkd::testing
