#include "spectral_field.hpp"

#include <algorithm>
#include <cmath>

namespace zkd {

SpectralField::SpectralField(Grid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  Require(coeffs_.size() == grid_.size(), ErrorCode::kInvalidArgument,
          "coefficient count " + std::to_string(coeffs_.size()) +
              " does not match grid size " + std::to_string(grid_.size()));
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  Require(grid_ == other.grid_, ErrorCode::kInvalidArgument, "grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  Require(grid_ == other.grid_, ErrorCode::kInvalidArgument, "grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double SpectralField::CoefficientNorm() const {
  double sum = 0.0;
  for (const auto& c : coeffs_) sum += std::norm(c);
  return std::sqrt(sum);
}

double SpectralField::HermitianDefect() const {
  double peak = 0.0;
  double defect = 0.0;
  ForEach([&](int m, int n, const Complex& c) {
    peak = std::max(peak, std::abs(c));
    // -m of the Nyquist wavenumber is stored in the same slot.
    const Complex& partner = at(-m, -n);
    defect = std::max(defect, std::abs(c - std::conj(partner)));
  });
  return peak == 0.0 ? 0.0 : defect / peak;
}

SpectralField operator+(SpectralField a, const SpectralField& b) {
  a += b;
  return a;
}

SpectralField operator-(SpectralField a, const SpectralField& b) {
  a -= b;
  return a;
}

SpectralField operator*(Complex scale, SpectralField a) {
  a *= scale;
  return a;
}

double RelativeDistance(const SpectralField& a, const SpectralField& b) {
  Require(a.grid() == b.grid(), ErrorCode::kInvalidArgument, "grid mismatch");
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    diff += std::norm(a.coeffs()[i] - b.coeffs()[i]);
    ref += std::norm(b.coeffs()[i]);
  }
  return std::sqrt(diff) / std::max(std::sqrt(ref), 1e-300);
}

}  // namespace zkd
