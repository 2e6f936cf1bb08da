#include "initial_data.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "field_io.hpp"
#include "rng.hpp"
#include "spectral_ops.hpp"

namespace zkd {
namespace {

constexpr std::pair<Profile, const char*> kNames[] = {
    {Profile::kZero, "zero"},         {Profile::kSingleMode, "single-mode"},
    {Profile::kCosX, "cos-x"},        {Profile::kTwoMode, "two-mode"},
    {Profile::kGaussian, "gaussian"}, {Profile::kRandom, "random"},
    {Profile::kFile, "file"},
};

void SetCos(SpectralField& f, int m, int n, double a) {
  f.at(m, n) += a / 2;
  f.at(-m, -n) += a / 2;
}

void SetSin(SpectralField& f, int m, int n, double a) {
  f.at(m, n) += Complex(0, -a / 2);
  f.at(-m, -n) += Complex(0, a / 2);
}

}  // namespace

Profile ParseProfile(const std::string& name) {
  for (const auto& [p, s] : kNames) {
    if (name == s) return p;
  }
  Fail(ErrorCode::kValidation, "unknown initial profile '" + name + "'");
}

const char* ProfileName(Profile p) {
  for (const auto& [q, s] : kNames) {
    if (p == q) return s;
  }
  return "?";
}

SpectralField RandomBandLimited(const Grid& grid, int band_x, int band_y, double amplitude,
                                std::uint64_t seed, bool mean_zero_x) {
  auto rng = CellRng(seed, 0);
  SpectralField raw(grid);
  raw.ForEach([&](int m, int n, Complex& c) {
    if (std::abs(m) > band_x || std::abs(n) > band_y) return;
    if (grid.IsNyquistX(m) || grid.IsNyquistY(n)) return;
    if (mean_zero_x && m == 0) return;
    const double decay = std::exp(-0.05 * (m * m + n * n));
    c = Complex(Normal(rng), Normal(rng)) * decay;
  });
  SpectralField out(grid);
  out.ForEach([&](int m, int n, Complex& c) {
    if (!grid.ContainsX(-m) || !grid.ContainsY(-n)) return;
    c = 0.5 * (raw.at(m, n) + std::conj(raw.at(-m, -n)));
  });
  const double norm = L2Norm(out);
  if (norm > 0) out *= Complex(amplitude / norm);
  return out;
}

SpectralField MakeInitialData(const Grid& grid, const ProfileSpec& spec) {
  const double a = spec.amplitude;
  Require(std::isfinite(a), ErrorCode::kValidation, "initial.amplitude must be finite");
  SpectralField f(grid);
  auto fits = [&](int m, int n) {
    return grid.ContainsX(m) && grid.ContainsX(-m) && grid.ContainsY(n) && grid.ContainsY(-n) &&
           !grid.IsNyquistX(m) && !grid.IsNyquistY(n);
  };
  switch (spec.profile) {
    case Profile::kZero:
      break;
    case Profile::kSingleMode:
      Require(spec.m != 0, ErrorCode::kInvalidInitialData,
              "single-mode profile needs initial.m != 0 (mean zero in x)");
      Require(fits(spec.m, spec.n), ErrorCode::kValidation,
              "initial.m / initial.n outside the grid's resolved band");
      SetCos(f, spec.m, spec.n, a);
      break;
    case Profile::kCosX:
      SetCos(f, 1, 0, a);
      break;
    case Profile::kTwoMode:
      SetCos(f, 1, 0, a);
      SetSin(f, 1, 1, a);
      break;
    case Profile::kGaussian: {
      Require(spec.width > 0, ErrorCode::kValidation, "initial.width must be > 0");
      std::vector<double> v(grid.size());
      const double two_pi = 2 * std::numbers::pi;
      for (int i = 0; i < grid.nx(); ++i) {
        for (int j = 0; j < grid.ny(); ++j) {
          double s = 0.0;
          // images within three periods are plenty for width <= 2pi
          for (int p = -3; p <= 3; ++p) {
            for (int q = -3; q <= 3; ++q) {
              const double dx = i * grid.dx() - std::numbers::pi + p * two_pi;
              const double dy = j * grid.dy() - std::numbers::pi + q * two_pi;
              s += std::exp(-(dx * dx + dy * dy) / (2 * spec.width * spec.width));
            }
          }
          v[static_cast<std::size_t>(i) * grid.ny() + j] = a * s;
        }
      }
      f = ForwardTransform(grid, v);
      f.ForEach([&](int m, int, Complex& c) {
        if (m == 0) c = 0.0;
      });
      break;
    }
    case Profile::kRandom:
      Require(spec.band >= 1, ErrorCode::kValidation, "initial.band must be >= 1");
      f = RandomBandLimited(grid, spec.band, spec.band, a, spec.seed);
      break;
    case Profile::kFile: {
      f = LoadField(spec.path);
      Require(f.grid().nx() == grid.nx() && f.grid().ny() == grid.ny(), ErrorCode::kValidation,
              "initial field " + std::to_string(f.grid().nx()) + "x" +
                  std::to_string(f.grid().ny()) + " does not match grid.nx x grid.ny");
      break;
    }
  }
  return f;
}

}  // namespace zkd
