#include "propagator.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace zkd {
namespace {

long double IntPow(long double base, int exponent) {
  long double r = 1.0L;
  for (int i = 0; i < exponent; ++i) r *= base;
  return r;
}

// Extended-precision symbol; the integrators and the propagator share it so
// the phases agree bit-for-bit.
long double OmegaExtended(int m, int n, const DispersionSymbol& symbol) {
  if (m == 0) return 0.0L;
  const long double am = std::abs(static_cast<long double>(m));
  const long double an = std::abs(static_cast<long double>(n));
  const long double x_part = IntPow(am, 1 + symbol.alpha);
  const long double y_part =
      symbol.beta == 1.0 ? an * an : std::pow(an, 1.0L + static_cast<long double>(symbol.beta));
  return static_cast<long double>(m) *
         (x_part + static_cast<int>(symbol.sign) * y_part);
}

constexpr long double kTwoPiL = 6.283185307179586476925286766559005768L;

}  // namespace

void DispersionSymbol::Validate() const {
  Require(alpha >= 1 && alpha <= 3, ErrorCode::kDomain,
          "alpha must be 1, 2 or 3 (the well-posedness theory requires alpha in {1,2,3}); got " +
              std::to_string(alpha));
  Require(beta > 0.0 && beta <= 1.0, ErrorCode::kDomain,
          "beta must lie in (0, 1]; got " + std::to_string(beta));
  Require(mu >= 0.0 && std::isfinite(mu), ErrorCode::kDomain,
          "mu must be a finite value >= 0; got " + std::to_string(mu));
}

double DispersionRelation(int m, int n, const DispersionSymbol& symbol) {
  return static_cast<double>(OmegaExtended(m, n, symbol));
}

double Damping(int m, int n, const DispersionSymbol& symbol) {
  if (symbol.mu == 0.0) return 0.0;
  const double k2 = static_cast<double>(m) * m + static_cast<double>(n) * n;
  return symbol.mu * k2 * k2;
}

Complex LinearFactor(const Grid& grid, int m, int n, double t,
                     const DispersionSymbol& symbol) {
  double phase = 0.0;
  if (!grid.IsNyquistX(m)) {
    long double theta = OmegaExtended(m, n, symbol) * static_cast<long double>(t);
    if (std::abs(theta) > kTwoPiL) theta = std::remainder(theta, kTwoPiL);
    phase = static_cast<double>(theta);
  }
  const double decay = symbol.mu == 0.0 ? 1.0 : std::exp(-Damping(m, n, symbol) * t);
  return decay * Complex(std::cos(phase), std::sin(phase));
}

SpectralField Propagate(const SpectralField& field, double t, const DispersionSymbol& symbol) {
  symbol.Validate();
  Require(std::isfinite(t), ErrorCode::kInvalidArgument, "time must be finite");
  if (symbol.mu > 0.0 && t < 0.0) {
    Fail(ErrorCode::kBackwardHeat,
         "damped propagator is a semigroup; cannot run backward to t = " + std::to_string(t));
  }
  SpectralField out = field;
  if (t == 0.0) return out;
  const Grid& grid = field.grid();
  out.ForEach([&](int m, int n, Complex& c) {
    if (c != Complex(0.0)) c *= LinearFactor(grid, m, n, t, symbol);
  });
  return out;
}

}  // namespace zkd
