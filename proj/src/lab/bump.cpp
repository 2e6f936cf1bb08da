#include "lab/bump.hpp"

#include <cmath>

namespace zkd::lab {
namespace {

double G(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }
double GPrime(double u) { return u > 0.0 ? std::exp(-1.0 / u) / (u * u) : 0.0; }

}  // namespace

double SmoothStep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = G(u);
  return a / (a + G(1.0 - u));
}

double SmoothStepDerivative(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  const double a = G(u);
  const double b = G(1.0 - u);
  const double denom = a + b;
  return (GPrime(u) * b + a * GPrime(1.0 - u)) / (denom * denom);
}

double Psi1(double r) {
  const double a = std::abs(r);
  if (a <= 0.25 || a >= 4.0) return 0.0;
  if (a >= 0.5 && a <= 2.0) return 1.0;
  return SmoothStep(4.0 * (a - 0.25)) * SmoothStep(0.5 * (4.0 - a));
}

double Psi1Derivative(double r) {
  const double a = std::abs(r);
  if (a <= 0.25 || a >= 4.0 || (a >= 0.5 && a <= 2.0)) return 0.0;
  const double u = 4.0 * (a - 0.25);
  const double v = 0.5 * (4.0 - a);
  const double d = 4.0 * SmoothStepDerivative(u) * SmoothStep(v) -
                   0.5 * SmoothStep(u) * SmoothStepDerivative(v);
  return r < 0.0 ? -d : d;
}

}  // namespace zkd::lab
