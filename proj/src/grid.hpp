#pragma once

#include <cstddef>
#include <numbers>
#include <string>

#include "error.hpp"

namespace zkd {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Uniform grid on [0, 2pi)^2. Wavenumbers along x run over
// {-nx/2+1, ..., nx/2}; the single Nyquist mode is +nx/2. Storage index of a
// wavenumber is the usual FFT order (m mod nx).
class Grid {
 public:
  Grid(int nx, int ny) : nx_(nx), ny_(ny) {
    Require(nx >= 8 && ny >= 8 && nx % 2 == 0 && ny % 2 == 0,
            ErrorCode::kInvalidArgument,
            "grid dimensions must be even and >= 8, got " + std::to_string(nx) +
                "x" + std::to_string(ny));
  }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
  }
  double dx() const noexcept { return kTwoPi / nx_; }
  double dy() const noexcept { return kTwoPi / ny_; }

  int WavenumberX(int index) const noexcept { return ToWavenumber(index, nx_); }
  int WavenumberY(int index) const noexcept { return ToWavenumber(index, ny_); }
  int IndexX(int m) const noexcept { return ToIndex(m, nx_); }
  int IndexY(int n) const noexcept { return ToIndex(n, ny_); }

  bool ContainsX(int m) const noexcept { return m > -nx_ / 2 && m <= nx_ / 2; }
  bool ContainsY(int n) const noexcept { return n > -ny_ / 2 && n <= ny_ / 2; }
  bool IsNyquistX(int m) const noexcept { return m == nx_ / 2; }
  bool IsNyquistY(int n) const noexcept { return n == ny_ / 2; }

  // Flat offset of wavenumber (m, n), rows are x (m-major).
  std::size_t Offset(int m, int n) const noexcept {
    return static_cast<std::size_t>(IndexX(m)) * static_cast<std::size_t>(ny_) +
           static_cast<std::size_t>(IndexY(n));
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static int ToWavenumber(int index, int n) noexcept {
    return index <= n / 2 ? index : index - n;
  }
  static int ToIndex(int k, int n) noexcept { return ((k % n) + n) % n; }

  int nx_;
  int ny_;
};

}  // namespace zkd
