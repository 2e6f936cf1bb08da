#pragma once

#include <complex>
#include <span>
#include <vector>

#include "grid.hpp"

namespace zkd {

using Complex = std::complex<double>;

// Fourier coefficients f^(m, n) on a grid's wavenumber lattice. The transform
// normalization is f^(m,n) = (2pi)^-2 \int f e^{-i(mx+ny)}, so a constant c
// has f^(0,0) = c. Real functions are Hermitian: f^(-m,-n) = conj f^(m,n).
class SpectralField {
 public:
  explicit SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size()) {}
  SpectralField(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const noexcept { return grid_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex& at(int m, int n) noexcept { return coeffs_[grid_.Offset(m, n)]; }
  const Complex& at(int m, int n) const noexcept {
    return coeffs_[grid_.Offset(m, n)];
  }

  // Applies fn(m, n, coeff&) to every stored coefficient.
  template <typename Fn>
  void ForEach(Fn&& fn) {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    for (int i = 0; i < nx; ++i) {
      const int m = grid_.WavenumberX(i);
      Complex* row = coeffs_.data() + static_cast<std::size_t>(i) * ny;
      for (int j = 0; j < ny; ++j) fn(m, grid_.WavenumberY(j), row[j]);
    }
  }

  template <typename Fn>
  void ForEach(Fn&& fn) const {
    const int nx = grid_.nx();
    const int ny = grid_.ny();
    for (int i = 0; i < nx; ++i) {
      const int m = grid_.WavenumberX(i);
      const Complex* row = coeffs_.data() + static_cast<std::size_t>(i) * ny;
      for (int j = 0; j < ny; ++j) fn(m, grid_.WavenumberY(j), row[j]);
    }
  }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(Complex scale);

  // sqrt(sum |f^|^2), the coefficient l2 norm.
  double CoefficientNorm() const;
  // Largest |f^(m,n) - conj f^(-m,-n)| divided by the largest |f^|.
  double HermitianDefect() const;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(Complex scale, SpectralField a);

// Relative l2 distance ||a - b|| / max(||b||, tiny).
double RelativeDistance(const SpectralField& a, const SpectralField& b);

}  // namespace zkd
