#include "spectral_ops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>

#include "fft.hpp"

namespace zkd {
namespace {

constexpr double kHermitianTolerance = 1e-12;

template <typename Multiplier>
SpectralField ApplyMultiplier(const SpectralField& field, Multiplier&& multiplier) {
  SpectralField out = field;
  out.ForEach([&](int m, int n, Complex& c) { c *= multiplier(m, n); });
  return out;
}

}  // namespace

bool ShellContains(int k, int wavenumber) noexcept {
  const long a = std::labs(wavenumber);
  if (k == 0) return a == 0;
  const long lo = 1L << (k - 1);
  return a >= lo && a < 2 * lo;
}

int ShellIndex(int wavenumber) noexcept {
  const unsigned a = static_cast<unsigned>(std::abs(wavenumber));
  return a == 0 ? 0 : std::bit_width(a);
}

SpectralField ForwardTransform(const Grid& grid, std::span<const double> samples) {
  Require(samples.size() == grid.size(), ErrorCode::kInvalidArgument,
          "sample count " + std::to_string(samples.size()) + " does not match grid " +
              std::to_string(grid.nx()) + "x" + std::to_string(grid.ny()));
  std::vector<Complex> in(samples.begin(), samples.end());
  const SpectralField raw = ForwardTransformComplex(grid, in);
  // Symmetrize away the roundoff so the field is exactly Hermitian (and the
  // self-conjugate Nyquist coefficients exactly real).
  SpectralField field(grid);
  field.ForEach([&](int m, int n, Complex& c) {
    c = 0.5 * (raw.at(m, n) + std::conj(raw.at(-m, -n)));
  });
  return field;
}

SpectralField ForwardTransformComplex(const Grid& grid, std::span<const Complex> samples) {
  Require(samples.size() == grid.size(), ErrorCode::kInvalidArgument,
          "sample count does not match grid");
  std::vector<Complex> out(grid.size());
  fft::Forward2d(grid.nx(), grid.ny(), samples, out);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : out) c *= scale;
  return SpectralField(grid, std::move(out));
}

std::vector<Complex> InverseTransformComplex(const SpectralField& field) {
  const Grid& grid = field.grid();
  std::vector<Complex> out(grid.size());
  fft::Backward2d(grid.nx(), grid.ny(), field.coeffs(), out);
  return out;
}

std::vector<double> InverseTransformUnchecked(const SpectralField& field) {
  const Grid& grid = field.grid();
  const int nx = grid.nx();
  const int ny = grid.ny();
  const int half_ny = ny / 2 + 1;
  std::vector<Complex> half(static_cast<std::size_t>(nx) * half_ny);
  auto coeffs = field.coeffs();
  for (int i = 0; i < nx; ++i) {
    std::copy_n(coeffs.begin() + static_cast<std::ptrdiff_t>(i) * ny, half_ny,
                half.begin() + static_cast<std::ptrdiff_t>(i) * half_ny);
  }
  std::vector<double> out(grid.size());
  fft::BackwardReal2d(nx, ny, half, out);
  return out;
}

std::vector<double> InverseTransform(const SpectralField& field) {
  const double defect = field.HermitianDefect();
  if (defect > kHermitianTolerance) {
    Fail(ErrorCode::kSymmetryViolation,
         "field is not Hermitian (relative defect " + std::to_string(defect) + ")");
  }
  return InverseTransformUnchecked(field);
}

SpectralField FractionalDerivative(const SpectralField& field, Axis axis, double power) {
  Require(power >= 0.0 && std::isfinite(power), ErrorCode::kInvalidArgument,
          "fractional derivative power must be a finite value >= 0");
  if (power == 0.0) return field;  // |0|^0 := 1
  return ApplyMultiplier(field, [&](int m, int n) {
    const int k = axis == Axis::kX ? m : n;
    return k == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k)), power);
  });
}

SpectralField BesselPotential(const SpectralField& field, BesselMode mode, double s) {
  if (s == 0.0) return field;
  return ApplyMultiplier(field, [&](int m, int n) {
    const double mm = static_cast<double>(m) * m;
    const double nn = static_cast<double>(n) * n;
    double base = 1.0;
    switch (mode) {
      case BesselMode::kFull: base += mm + nn; break;
      case BesselMode::kXOnly: base += mm; break;
      case BesselMode::kYOnly: base += nn; break;
    }
    return std::pow(base, 0.5 * s);
  });
}

SpectralField DyadicProject(const SpectralField& field, DyadicShell shell) {
  Require(shell.k >= 0, ErrorCode::kInvalidArgument, "shell index must be >= 0");
  return ApplyMultiplier(field, [&](int m, int n) {
    return ShellContains(shell.k, shell.axis == Axis::kX ? m : n) ? 1.0 : 0.0;
  });
}

SpectralField Derivative(const SpectralField& field, Axis axis) {
  const Grid& grid = field.grid();
  SpectralField out = field;
  out.ForEach([&](int m, int n, Complex& c) {
    if (axis == Axis::kX) {
      c = grid.IsNyquistX(m) ? Complex(0.0) : c * Complex(0.0, m);
    } else {
      c = grid.IsNyquistY(n) ? Complex(0.0) : c * Complex(0.0, n);
    }
  });
  return out;
}

double SobolevNorm(const SpectralField& field, double s) {
  double sum = 0.0;
  field.ForEach([&](int m, int n, const Complex& c) {
    const double weight = std::pow(1.0 + static_cast<double>(m) * m +
                                       static_cast<double>(n) * n, s);
    sum += weight * std::norm(c);
  });
  return std::sqrt(sum);
}

double DyadicSobolevNorm(const SpectralField& field, double s) {
  // Every coefficient sits in exactly one product shell (kx, ky), so the
  // triple sum reduces to a per-coefficient weight.
  double sum = 0.0;
  field.ForEach([&](int m, int n, const Complex& c) {
    const int kx = ShellIndex(m);
    const int ky = ShellIndex(n);
    double weight = 1.0;
    if (ky >= 1) weight += std::pow(2.0, 2.0 * ky * s);
    if (kx >= 1) weight += std::pow(2.0, 2.0 * kx * s);
    sum += weight * std::norm(c);
  });
  return std::sqrt(sum);
}

double L2Norm(const SpectralField& field) { return kTwoPi * field.CoefficientNorm(); }

SpectralField ProjectMeanZeroX(const SpectralField& field) {
  return ApplyMultiplier(field, [](int m, int) { return m == 0 ? 0.0 : 1.0; });
}

double MeanZeroXViolation(const SpectralField& field) {
  double zero_part = 0.0;
  double total = 0.0;
  field.ForEach([&](int m, int, const Complex& c) {
    total += std::norm(c);
    if (m == 0) zero_part += std::norm(c);
  });
  return total == 0.0 ? 0.0 : std::sqrt(zero_part / total);
}

bool InDealiasedBand(const Grid& grid, int m, int n) noexcept {
  return 3 * std::abs(m) <= grid.nx() && 3 * std::abs(n) <= grid.ny();
}

SpectralField Dealias(const SpectralField& field) {
  const Grid& grid = field.grid();
  return ApplyMultiplier(field,
                         [&](int m, int n) { return InDealiasedBand(grid, m, n) ? 1.0 : 0.0; });
}

SpectralField Resample(const SpectralField& field, const Grid& target) {
  const Grid& source = field.grid();
  if (source == target) return field;
  SpectralField out(target);
  field.ForEach([&](int m, int n, const Complex& c) {
    if (c == Complex(0.0)) return;
    // Images of the source mode: the Nyquist wavenumber stands for both +N/2
    // and -N/2 when the target band is wider.
    int ms[2] = {m, m};
    int ns[2] = {n, n};
    int count_m = 1;
    int count_n = 1;
    if (source.IsNyquistX(m) && target.nx() > source.nx()) {
      ms[1] = -m;
      count_m = 2;
    }
    if (source.IsNyquistY(n) && target.ny() > source.ny()) {
      ns[1] = -n;
      count_n = 2;
    }
    const double share = 1.0 / (count_m * count_n);
    for (int a = 0; a < count_m; ++a) {
      for (int b = 0; b < count_n; ++b) {
        // Truncation folds -N/2 onto the target Nyquist slot.
        const int tm = ms[a] == -target.nx() / 2 ? target.nx() / 2 : ms[a];
        const int tn = ns[b] == -target.ny() / 2 ? target.ny() / 2 : ns[b];
        if (target.ContainsX(tm) && target.ContainsY(tn)) out.at(tm, tn) += share * c;
      }
    }
  });
  return out;
}

double SupNorm(const SpectralField& field, int refinement) {
  Require(refinement >= 1, ErrorCode::kInvalidArgument, "refinement must be >= 1");
  const Grid fine(field.grid().nx() * refinement, field.grid().ny() * refinement);
  const SpectralField refined = Resample(field, fine);
  double peak = 0.0;
  if (refined.HermitianDefect() <= kHermitianTolerance) {
    for (double v : InverseTransformUnchecked(refined)) peak = std::max(peak, std::abs(v));
  } else {
    for (const Complex& v : InverseTransformComplex(refined)) peak = std::max(peak, std::abs(v));
  }
  return peak;
}

}  // namespace zkd
